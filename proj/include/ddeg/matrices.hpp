#pragma once

// Contained matrices of an endomorphism, spectral radii, maximal eigenvalues and eigenvectors.

#include <optional>
#include <string>
#include <vector>

#include "ddeg/algebraic.hpp"
#include "ddeg/polynomial.hpp"
#include "ddeg/weighted.hpp"

namespace ddeg {

// Row i lists the exponent vectors of f_i, lexicographically ascending.
using SupportFamily = std::vector<std::vector<Monomial>>;
// Non-negative integer matrix stored by rows.
using ExpMatrix = std::vector<Monomial>;

SupportFamily support_family(const Endomorphism& f);
// Drops rows that are entrywise dominated by another row of the same support.
SupportFamily prune_dominated(const SupportFamily& s);
// Product of the support sizes, saturating at SIZE_MAX.
std::size_t contained_matrix_count(const SupportFamily& s);

IntMatrix to_int_matrix(const ExpMatrix& m);
std::string matrix_str(const ExpMatrix& m);
RealAlgebraic spectral_radius(const ExpMatrix& m);
// theta as an element of Q(theta); rational values land in the rational field.
NFElem algebraic_to_nf(const RealAlgebraic& a);

struct FrobeniusForm {
  // Blocks are strongly connected components ordered so that every positive entry
  // m[i][j] has block(i) >= block(j).
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of;
};
FrobeniusForm frobenius_normal_form(const ExpMatrix& m);

// Non-negative eigenvectors of m for theta = rho(m), one per admissible choice of the
// block carrying the Perron vector, latest block first.
std::vector<std::vector<NFElem>> nonneg_eigenvectors(const ExpMatrix& m, const NFElem& theta);
std::optional<std::vector<NFElem>> nonneg_eigenvector(const ExpMatrix& m, const NFElem& theta);

struct MaxEigenData {
  RealAlgebraic theta = RealAlgebraic::from_int(0);
  NFElem theta_nf;
  ExpMatrix witness;
  std::vector<ExpMatrix> maximizers;  // lexicographic order, capped
  std::optional<WeightVector> mu;
  std::vector<WeightVector> alternatives;  // further verified eigenvectors, distinct from mu
  std::size_t matrices_examined = 0;
  std::string eigenvector_source;  // "candidate" or "policy-improvement"
};

struct MatrixBudget {
  std::size_t max_matrices = 1000000;
  std::size_t max_candidates = 64;
};

MaxEigenData maximal_eigenvalue(const Endomorphism& f, const MatrixBudget& budget = {});
// Fills mu. Throws Internal with a report when no candidate verifies.
MaxEigenData maximal_eigenvector(const Endomorphism& f, const MatrixBudget& budget = {});
bool verify_maximal_eigenvector(const Endomorphism& f, const std::vector<NFElem>& mu, const NFElem& theta);
bool verify_maximal_eigenvector(const Endomorphism& f, const WeightVector& mu, const NFElem& theta);

}  // namespace ddeg
