#pragma once

// Sparse multivariate polynomials over Q and polynomial endomorphisms of affine n-space.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ddeg/upoly.hpp"

namespace ddeg {

using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

// Graded lexicographic order, x1 > x2 > ... within a degree.
bool grlex_less(const Monomial& a, const Monomial& b);
std::uint64_t monomial_degree(const Monomial& m);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial mono;
  mpq_class coeff;
};

// Resource caps for exact arithmetic. Exceeding them raises ResourceError.
struct Budget {
  std::size_t max_terms = 200000;
  std::size_t max_coeff_bits = 1u << 16;
};

using Degree = std::int64_t;
constexpr Degree kNegInfDegree = std::numeric_limits<Degree>::min();

class Polynomial {
 public:
  explicit Polynomial(std::size_t arity = 1) : arity_(arity) {}
  // Terms may be unsorted and contain duplicates or zeros.
  Polynomial(std::size_t arity, std::vector<Term> terms);
  static Polynomial constant(std::size_t arity, const mpq_class& c);
  static Polynomial variable(std::size_t arity, std::size_t i);  // x_{i+1}, 0-based index
  static Polynomial monomial(std::size_t arity, Monomial m, const mpq_class& c = 1);

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }  // ascending grlex
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_term() const;
  mpq_class coeff(const Monomial& m) const;

  Degree total_degree() const;  // kNegInfDegree for 0
  Degree partial_degree(const std::vector<std::size_t>& vars) const;  // 0-based variable indices
  Degree degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;
  // Highest variable index occurring plus one (0 for constants).
  std::size_t variable_span() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const mpq_class& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }
  Polynomial derivative(std::size_t var) const;
  // Keep only the terms satisfying pred.
  template <class Pred>
  Polynomial filter(Pred pred) const {
    Polynomial r(arity_);
    for (const auto& t : terms_)
      if (pred(t)) r.terms_.push_back(t);
    return r;
  }
  // Same polynomial seen in a different ambient arity, with variables renamed by
  // new_index[old] (old variables not listed must be absent).
  Polynomial remap(std::size_t new_arity, const std::vector<std::size_t>& new_index) const;

  std::string str() const;

  void check_budget(const Budget& b) const;

 private:
  friend Polynomial mul(const Polynomial&, const Polynomial&, const Budget&);
  std::size_t arity_;
  std::vector<Term> terms_;
};

inline bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coeff == b.coeff; }

Polynomial mul(const Polynomial& a, const Polynomial& b, const Budget& budget = {});
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& p, unsigned e, const Budget& budget = {});

class Endomorphism {
 public:
  Endomorphism() = default;
  explicit Endomorphism(std::vector<Polynomial> comps);
  static Endomorphism identity(std::size_t n);

  std::size_t arity() const { return comps_.size(); }
  const Polynomial& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Polynomial>& components() const { return comps_; }
  Degree degree() const;
  std::size_t total_terms() const;
  bool operator==(const Endomorphism& o) const { return comps_ == o.comps_; }
  bool operator!=(const Endomorphism& o) const { return !(*this == o); }
  std::string str() const;

 private:
  std::vector<Polynomial> comps_;
};

// p(inner_1, ..., inner_n)
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& inner, const Budget& budget = {});
Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner, const Budget& budget = {});
Endomorphism iterate(const Endomorphism& f, unsigned r, const Budget& budget = {});

bool is_triangular(const Endomorphism& f);
Polynomial jacobian_determinant(const Endomorphism& f, const Budget& budget = {});
bool is_dominant(const Endomorphism& f);

// Text grammar: sums/products/powers of rationals and variables x1..xn.
Polynomial parse_polynomial(const std::string& text, std::size_t arity = 0);
Endomorphism parse_endomorphism(const std::string& text);
// Univariate in "x" (x1 is accepted too).
QPoly parse_univariate(const std::string& text);

}  // namespace ddeg
