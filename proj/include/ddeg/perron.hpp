#pragma once

// Weak Perron / Perron / Handelman classification and realization of weak Perron
// numbers as dynamical degrees of automorphisms.

#include <optional>
#include <string>
#include <vector>

#include "ddeg/algebraic.hpp"
#include "ddeg/polynomial.hpp"
#include "ddeg/stability.hpp"

namespace ddeg {

struct AlgebraicCandidate {
  IntPolynomial given;    // as supplied, sign-normalized
  IntPolynomial reduced;  // squarefree, rational roots other than lambda removed
  RealAlgebraic lambda = RealAlgebraic::from_int(1);
};

// Selects a real root of a monic integer polynomial: "largest", or a 0-based index into
// the ascending list of distinct real roots. Domain error unless monic and lambda >= 1.
AlgebraicCandidate make_candidate(const IntPolynomial& p, const std::string& selector = "largest");

ModulusVerdict is_weak_perron(const AlgebraicCandidate& c, unsigned precision_bits = 256);
ModulusVerdict is_perron(const AlgebraicCandidate& c, unsigned precision_bits = 256);

struct HandelmanResult {
  enum class Kind { Yes, No, Unknown } kind = Kind::Unknown;
  IntPolynomial certificate;  // x^k - sum a_i x^i, a_i >= 0, a multiple of the reduced polynomial
  int degree_cap = 0;
  std::string reason;
};
const char* handelman_name(HandelmanResult::Kind k);
// degree_cap 0 means 2 * deg + 4
HandelmanResult is_handelman(const AlgebraicCandidate& c, int degree_cap = 0);

struct RealizationPlan {
  std::size_t dimension = 0;
  Endomorphism automorphism;
  RealAlgebraic predicted = RealAlgebraic::from_int(1);
  std::string tag;  // A1-identity, A2-integer, A3-shiftlike, A4-quadratic, A2n-doubling, examplerst
  std::optional<bool> verified;
  std::string verification;
  std::vector<std::string> notes;
};

// Runs the dynamical degree driver on plan.automorphism and records the comparison.
void verify_plan(RealizationPlan& plan, const EngineConfig& cfg);

// Domain error when lambda is not weak Perron or no matrix witness is available in the general case.
RealizationPlan realize_weak_perron(const AlgebraicCandidate& c, const std::optional<IntMatrix>& matrix = std::nullopt,
                                    int handelman_cap = 0);

// 3 when the conjugate is negative, 4 when positive. Domain error unless the reduced
// polynomial is an irreducible quadratic with lambda weak Perron.
int minimal_dimension_quadratic(const AlgebraicCandidate& c);

// (x2 + x1^r x3^t, x3, x1 + x3^s (x2 + x1^r x3^t)), lambda = largest root of x^2 - (r+s+t) x + rs.
RealizationPlan examplerst_family(long r, long s, long t);

// Smallest m <= max_m with lambda^m Perron.
std::optional<int> lind_power_perron(const AlgebraicCandidate& c, int max_m = 12, unsigned precision_bits = 256);

bool is_irreducible_matrix(const IntMatrix& a);

struct ClassificationReport {
  AlgebraicCandidate candidate;
  ModulusVerdict weak_perron;
  ModulusVerdict perron;
  HandelmanResult handelman;
  std::optional<int> minimal_dimension;
  std::optional<RealizationPlan> realization;
  std::vector<std::string> notes;
};
ClassificationReport classify_number(const AlgebraicCandidate& c, unsigned precision_bits = 256, int handelman_cap = 0);

}  // namespace ddeg
