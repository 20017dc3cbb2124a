#pragma once

// Monomial weight functions deg_mu, homogeneous decompositions and leading parts.

#include <utility>
#include <vector>

#include "ddeg/algebraic.hpp"
#include "ddeg/polynomial.hpp"

namespace ddeg {

class WeightVector {
 public:
  WeightVector() = default;
  // Entries are moved into one common field; throws Domain on a negative or all-zero vector.
  explicit WeightVector(std::vector<NFElem> entries);
  static WeightVector from_ints(const std::vector<long>& v);
  static WeightVector ones(std::size_t n);

  std::size_t size() const { return e_.size(); }
  const NFElem& operator[](std::size_t i) const { return e_[i]; }
  const std::vector<NFElem>& entries() const { return e_; }
  const Field& field() const { return field_; }
  bool positive(std::size_t i) const { return sign_[i] > 0; }
  std::vector<std::size_t> zero_indices() const;
  bool strictly_positive() const { return zero_indices().empty(); }
  std::string str(int digits = 6) const;

 private:
  std::vector<NFElem> e_;
  std::vector<int> sign_;
  Field field_;
};

struct MuDegree {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::NegInf;
  NFElem value;
  static MuDegree neg_inf() { return {}; }
  static MuDegree pos_inf() { return {Kind::PosInf, NFElem()}; }
  static MuDegree finite(NFElem v) { return {Kind::Finite, std::move(v)}; }
  bool is_finite() const { return kind == Kind::Finite; }
  std::string str() const;
};

NFElem mu_degree_monomial(const Monomial& m, const WeightVector& mu);
MuDegree mu_degree_poly(const Polynomial& p, const WeightVector& mu);
MuDegree mu_degree_endo(const Endomorphism& f, const WeightVector& mu);
Polynomial mu_homogeneous_part(const Polynomial& p, const WeightVector& mu, const NFElem& value);
// g_j = part of f_j of mu-degree theta*mu_j, theta = deg_mu(f). Domain error when infinite.
Endomorphism mu_leading_endo(const Endomorphism& f, const WeightVector& mu);
Endomorphism mu_leading_endo(const Endomorphism& f, const WeightVector& mu, const NFElem& theta);
bool is_mu_homogeneous(const Polynomial& p, const WeightVector& mu, const NFElem& value);
bool is_mu_homogeneous_endo(const Endomorphism& h, const WeightVector& mu, const NFElem& theta);
// Pieces (xi, g_xi), xi ascending, summing to f. Components with mu_i = 0 go entirely into xi = 0.
std::vector<std::pair<NFElem, Endomorphism>> decompose_endo(const Endomorphism& f, const WeightVector& mu,
                                                            const NFElem& theta);

}  // namespace ddeg
