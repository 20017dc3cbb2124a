#pragma once

// Certified real algebraic numbers and elements of Q(theta) for a real root theta.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddeg/upoly.hpp"

namespace ddeg {

// A real root of a squarefree integer polynomial, isolated in the open interval (lo, hi).
class RealAlgebraic {
 public:
  RealAlgebraic(IntPolynomial defining, mpq_class lo, mpq_class hi);
  static RealAlgebraic from_rational(const mpq_class& q);
  static RealAlgebraic from_int(long v) { return from_rational(mpq_class(v)); }

  const IntPolynomial& defining() const { return def_; }
  QPoly defining_q() const { return to_qpoly(def_); }
  const mpq_class& lo() const { return lo_; }
  const mpq_class& hi() const { return hi_; }
  mpq_class width() const { return hi_ - lo_; }

  // Exact rational value when the defining polynomial is linear.
  std::optional<mpq_class> rational_value() const;
  RealAlgebraic bisect() const;
  RealAlgebraic refined(const mpq_class& max_width) const;
  RealAlgebraic negate() const;

  double to_double() const;
  std::string decimal(int digits) const;

 private:
  IntPolynomial def_;
  mpq_class lo_, hi_;
};

std::vector<RealAlgebraic> isolate_real_roots(const QPoly& p);
std::vector<RealAlgebraic> isolate_real_roots(const IntPolynomial& p);
std::optional<RealAlgebraic> largest_real_root(const IntPolynomial& p);
std::optional<RealAlgebraic> largest_real_root(const QPoly& p);

int compare(const RealAlgebraic& a, const RealAlgebraic& b);
int compare(const RealAlgebraic& a, const mpq_class& q);
inline bool operator==(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == 0; }
inline bool operator<(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) < 0; }

using IntMatrix = std::vector<std::vector<mpz_class>>;
using QMatrix = std::vector<std::vector<mpq_class>>;

QPoly char_poly_q(const QMatrix& m);
IntPolynomial char_poly(const IntMatrix& m);  // monic

// Sign-preserving rational bounds for square roots, accurate to 2^-bits.
mpq_class sqrt_lower(const mpq_class& q, unsigned bits);
mpq_class sqrt_upper(const mpq_class& q, unsigned bits);

// ---------------------------------------------------------------------------
// Q(theta). The modulus may be reducible; it is always a squarefree divisor of
// theta's defining polynomial that still vanishes at theta.
struct FieldDesc {
  RealAlgebraic theta;
  QPoly modulus;  // monic
};
using Field = std::shared_ptr<const FieldDesc>;

Field make_field(const RealAlgebraic& theta);
Field rational_field();

class NFElem {
 public:
  NFElem();
  NFElem(const mpq_class& q);  // NOLINT: implicit rational embedding is intended
  NFElem(long v) : NFElem(mpq_class(v)) {}  // NOLINT
  NFElem(Field f, QPoly rep);
  static NFElem generator(const Field& f);

  const Field& field() const { return f_; }
  const QPoly& rep() const { return rep_; }
  std::optional<mpq_class> rational_value() const;
  bool is_zero_rep() const { return rep_.is_zero(); }

  friend NFElem operator+(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b);
  NFElem operator-() const;
  NFElem inverse() const;  // domain error on zero
  NFElem pow(unsigned e) const;
  NFElem lift_to(const Field& f) const;

  std::string str() const;  // in terms of "t" = theta

 private:
  Field f_;
  QPoly rep_;
};

// Brings a and b into one field; throws for two unrelated irrational generators.
Field common_field(const Field& a, const Field& b);

int nf_sign(const NFElem& e);
int nf_compare(const NFElem& a, const NFElem& b);
inline bool nf_equal(const NFElem& a, const NFElem& b) { return nf_compare(a, b) == 0; }
RealAlgebraic nf_to_real_algebraic(const NFElem& e);
double nf_to_double(const NFElem& e);
// Rational interval containing the value, width <= max_width.
std::pair<mpq_class, mpq_class> nf_interval(const NFElem& e, const mpq_class& max_width);

// ---------------------------------------------------------------------------
enum class Tri { Yes, No, Inconclusive };
struct ModulusVerdict {
  Tri verdict = Tri::Inconclusive;
  unsigned bits_used = 0;
  std::string detail;
};

// Do all roots of p other than lambda satisfy |mu| < lambda (strict) or |mu| <= lambda?
ModulusVerdict conjugates_within_modulus(const IntPolynomial& p, const RealAlgebraic& lambda, bool strict,
                                         unsigned precision_cap_bits = 256);

}  // namespace ddeg
