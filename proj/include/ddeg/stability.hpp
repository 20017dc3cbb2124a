#pragma once

// mu-algebraic stability, the iterate-degree oracle and the dynamical degree driver.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddeg/algebraic.hpp"
#include "ddeg/matrices.hpp"
#include "ddeg/polynomial.hpp"
#include "ddeg/weighted.hpp"

namespace ddeg {

enum class StabilityVerdict { StableProven, StableUpTo, UnstableAt };
const char* verdict_name(StabilityVerdict v);

struct StabilityReport {
  StabilityVerdict verdict = StabilityVerdict::StableUpTo;
  unsigned r = 0;  // horizon for StableUpTo, first vanishing iterate for UnstableAt
  std::string reason;  // structural argument, or how vanishing was confirmed
  Endomorphism leading_part;
  // surviving[r-1][k]: is (g^r)_i non-zero for the k-th positive-weight index i
  std::vector<std::vector<bool>> surviving;
};

// Leading part g of f for mu, then either a structural proof that no g^r loses all
// positive-weight components, or a scan of g, g^2, ..., g^horizon.
StabilityReport stability_test(const Endomorphism& f, const WeightVector& mu, unsigned horizon,
                               const Budget& budget = {});

// ---------------------------------------------------------------------------

struct OracleRow {
  unsigned r = 0;
  Degree degree = 0;
  bool certified = false;  // exact composition, or matched the combinatorial upper bound
  double root = 0;         // degree^(1/r)
};

struct OracleReport {
  std::vector<OracleRow> rows;
  bool truncated = false;
  std::string note;
  std::optional<double> estimate;
  std::string estimator;  // "recurrence", "ratio" or "none"
  std::string recurrence;  // characteristic polynomial found by the recurrence fit
};

// deg(f^r) for r = 1..depth. Each root is an upper bound for the dynamical degree.
OracleReport oracle_degree_sequence(const Endomorphism& f, unsigned depth, const Budget& budget = {});
// deg in the variables vars (0-based) of f^r, along random lines with the other variables fixed.
OracleReport oracle_partial_degree_sequence(const Endomorphism& f, const std::vector<std::size_t>& vars,
                                            unsigned depth);
// Estimate the growth rate of a positive integer sequence (recurrence fit, else last ratio).
void estimate_growth(OracleReport& rep);

// ---------------------------------------------------------------------------

struct CertStep {
  std::string step;
  std::vector<std::pair<std::string, std::string>> data;
};

struct DynamicalDegreeResult {
  bool exact = false;
  std::string basis;  // "proven", "evidence-based" or "bracket"
  std::optional<RealAlgebraic> value;
  RealAlgebraic lower = RealAlgebraic::from_int(1);
  RealAlgebraic upper = RealAlgebraic::from_int(1);
  bool upper_strict = false;
  std::vector<CertStep> certificate;
  OracleReport oracle;
  std::optional<bool> oracle_consistent;
};

struct EngineConfig {
  unsigned oracle_depth = 8;
  unsigned horizon = 0;  // 0 means 2n + 4
  double tolerance = 1e-6;
  bool run_oracle = true;
  Budget budget;
  MatrixBudget matrices;
};

struct SplitData {
  std::size_t m = 0;
  Endomorphism fhat;  // arity m; empty when m = 0
  OracleReport lambda2;  // partial degrees in x_{m+1..n}
};
// Requires f_1..f_m in k[x_1..x_m].
SplitData dinh_nguyen_split(const Endomorphism& f, std::size_t m, unsigned depth = 8);

DynamicalDegreeResult dynamical_degree(const Endomorphism& f, const EngineConfig& cfg = {});

// Oracle agreement: squeeze against every upper bound and closeness of the estimate.
bool oracle_agrees(const OracleReport& rep, const RealAlgebraic& value, double tolerance);

}  // namespace ddeg
