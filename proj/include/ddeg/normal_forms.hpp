#pragma once

// Shape recognition, Bruhat conjugation, permutation-elementary closed forms, the
// dimension-3 reduction loop and the degree-d spectrum enumerators.

#include <optional>
#include <string>
#include <vector>

#include "ddeg/algebraic.hpp"
#include "ddeg/polynomial.hpp"
#include "ddeg/stability.hpp"

namespace ddeg {

// x -> linear * x + translation
struct AffineMap {
  QMatrix linear;
  std::vector<mpq_class> translation;

  static AffineMap identity(std::size_t n);
  static AffineMap from_endomorphism(const Endomorphism& f);  // Domain error unless deg <= 1 and invertible
  std::size_t arity() const { return linear.size(); }
  Endomorphism to_endomorphism() const;
  AffineMap inverse() const;
  bool is_identity() const;
};

QMatrix matrix_inverse(const QMatrix& m);  // Domain error when singular
mpq_class determinant(const QMatrix& m);

// f_i = tau_{sigma[i]} with tau triangular (tau_k in k[x_1..x_k]); indices 0-based.
struct PermutationTriangular {
  std::vector<std::size_t> sigma;
  Endomorphism tau;
};
std::optional<PermutationTriangular> as_permutation_triangular(const Endomorphism& f);
// Additionally tau_k = xi_k x_k + p_k(x_1..x_{k-1}) with xi_k a non-zero constant.
bool is_permutation_triangular_automorphism(const Endomorphism& f);

struct AffineTriangularFactor {
  AffineMap alpha;
  Endomorphism tau;  // triangular
};
std::optional<AffineTriangularFactor> factor_affine_triangular(const Endomorphism& f);

struct ShapeInfo {
  std::vector<std::string> shapes;  // every class that applies
  std::string primary;              // most specific one, "other" if none
  std::optional<AffineTriangularFactor> factor;
  bool has(const std::string& s) const;
};
ShapeInfo classify_shape(const Endomorphism& f);

struct BruhatResult {
  AffineMap conjugator;  // beta; result = beta^-1 o f o beta
  PermutationTriangular result;
  Endomorphism conjugated;
};
BruhatResult bruhat_conjugate(const AffineMap& alpha, const Endomorphism& tau);
// Lower-triangular L1, L2 and permutation matrix P with L1 * a * L2 = P.
void bruhat_factor(const QMatrix& a, QMatrix& l1, QMatrix& l2, std::vector<std::size_t>& sigma);

// (f_1..f_m, xi x_{n+1} + p(x_1..x_n), x_{m+1}, ..., x_n) with {f_1..f_m} = {x_1..x_m}; 0-based
// conj[i] is the new index of old coordinate i.
struct PermElemNormalForm {
  std::size_t m = 0;
  std::size_t n = 0;  // the map lives on n + 1 coordinates
  std::vector<std::size_t> fhat;  // f_i = x_{fhat[i]} for i < m
  mpq_class xi;
  Polynomial p;
  std::vector<std::size_t> conj;
  Endomorphism normal;
};
std::optional<PermElemNormalForm> try_perm_elem_normal_form(const Endomorphism& h);
PermElemNormalForm perm_elem_normal_form(const Endomorphism& h);  // Domain error on shape mismatch

struct PermElemDegree {
  RealAlgebraic lambda = RealAlgebraic::from_int(1);
  bool low_degree = false;  // deg in x_{m+1..n} of p at most 1
  std::optional<std::vector<NFElem>> mu;  // in normal-form coordinates
  Monomial exponent;  // monomial of p attaining lambda
};
PermElemDegree perm_elem_dynamical_degree(const PermElemNormalForm& nf);

struct ReduceStep {
  enum class Kind { AlreadyGood, Reduced } kind = Kind::AlreadyGood;
  std::string reason;
  Endomorphism result;
  Endomorphism conjugator;  // h, result = h o f o h^-1
  RealAlgebraic theta = RealAlgebraic::from_int(1);
};
// "i" or "ii" when a permutation-triangular automorphism of A^3 has one of the two shapes
// that an unstable map must have (with deg p_2 = theta^2, resp. theta), "" otherwise.
std::string a3_unstable_form(const Endomorphism& f, const NFElem& theta);
ReduceStep reduce_A3_step(const Endomorphism& f, const MatrixBudget& budget = {});

DynamicalDegreeResult affine_triangular_A3_dynamical_degree(const Endomorphism& f, const MatrixBudget& budget = {});

struct SpectrumEntry {
  long a = 0, b = 0, c = 0;
  RealAlgebraic value = RealAlgebraic::from_int(0);
  IntPolynomial quadratic;  // x^2 - a x - k, the value is its largest root
  int first_degree = 0;     // smallest degree at which the value occurs
  // max(a+b, c) over every parameter triple giving the value, ascending; for the shift-like
  // set these are exactly the degrees of shift-like maps attaining it
  std::vector<int> degrees;
  std::vector<std::string> witnesses;
};
// {(a + sqrt(a^2 + 4bc))/2 : a+b <= d, c <= d} \ {0}, ascending, one entry per value.
std::vector<SpectrumEntry> enumerate_affine_triangular_set_A3(int d);
// {(a + sqrt(a^2 + 4e - 4a))/2 : 0 <= a <= e, 1 <= e <= d}, ascending, one entry per value.
std::vector<SpectrumEntry> enumerate_shiftlike_set_A3(int d);

}  // namespace ddeg
