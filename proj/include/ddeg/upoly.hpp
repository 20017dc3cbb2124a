#pragma once

// Dense univariate polynomials over Q and Z.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ddeg {

// Coefficients lowest degree first; always trimmed (no trailing zeros).
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> c);
  static QPoly constant(const mpq_class& c);
  static QPoly monomial(const mpq_class& c, std::size_t k);
  static QPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(std::size_t k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
  const mpq_class& lead() const { return c_.back(); }

  mpq_class eval(const mpq_class& t) const;
  int sign_at(const mpq_class& t) const;
  QPoly derivative() const;
  QPoly monic() const;
  QPoly neg_x() const;  // p(-x)
  QPoly scale_x(const mpq_class& s) const;  // p(s*x)

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const mpq_class& s, const QPoly& a);
  QPoly operator-() const;
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  std::string str(const char* var = "x") const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly operator/(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic, gcd(0,0)=0
// s*a + t*b = g (monic gcd)
QPoly ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);
QPoly squarefree_part(const QPoly& p);
QPoly pow(const QPoly& p, unsigned e);

// Integer polynomial, lowest degree first.
using IntPolynomial = std::vector<mpz_class>;

IntPolynomial to_int_primitive(const QPoly& p);  // clear denominators, positive leading coefficient
QPoly to_qpoly(const IntPolynomial& p);
std::string int_poly_str(const IntPolynomial& p, const char* var = "x");

// Sturm sequence of a squarefree polynomial.
std::vector<QPoly> sturm_sequence(const QPoly& p);
int sign_variations(const std::vector<QPoly>& seq, const mpq_class& t);
// Number of distinct roots in (lo, hi]; endpoints should not be roots for open-interval use.
int count_roots(const std::vector<QPoly>& seq, const mpq_class& lo, const mpq_class& hi);
// Bound B with every complex root |z| < B.
mpq_class cauchy_bound(const QPoly& p);

}  // namespace ddeg
