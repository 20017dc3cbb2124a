// Top-level dynamical degree computation: closed forms first, then maximal
// eigenvalue + eigenvector, stability and the split recursion on zero weights.

#include <algorithm>
#include <numeric>

#include "ddeg/errors.hpp"
#include "ddeg/normal_forms.hpp"
#include "ddeg/stability.hpp"

namespace ddeg {

namespace {

const int kDigits = 20;

DynamicalDegreeResult exact_result(const RealAlgebraic& v, const std::string& basis) {
  DynamicalDegreeResult r;
  r.exact = true;
  r.basis = basis;
  r.value = v;
  r.lower = r.upper = v;
  return r;
}

DynamicalDegreeResult bracket_result(const RealAlgebraic& lo, const RealAlgebraic& hi, bool strict) {
  DynamicalDegreeResult r;
  r.basis = "bracket";
  r.lower = lo;
  r.upper = hi;
  r.upper_strict = strict;
  return r;
}

const RealAlgebraic& max_of(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) >= 0 ? a : b; }

int rank_of(const DynamicalDegreeResult& r) {
  if (!r.exact) return 0;
  return r.basis == "proven" ? 2 : 1;
}

bool is_monomial_map(const Endomorphism& f) {
  return std::all_of(f.components().begin(), f.components().end(),
                     [](const Polynomial& p) { return p.num_terms() == 1; });
}

std::string summarize(const DynamicalDegreeResult& r) {
  if (r.exact) return r.value->decimal(kDigits) + " (" + r.basis + ")";
  return "[" + r.lower.decimal(kDigits) + ", " + r.upper.decimal(kDigits) + (r.upper_strict ? ")" : "]");
}

DynamicalDegreeResult closed_form(const Endomorphism& f, const EngineConfig& cfg, bool& hit) {
  hit = true;
  std::size_t n = f.arity();
  if (is_monomial_map(f)) {
    ExpMatrix m;
    for (const auto& p : f.components()) m.push_back(p.terms()[0].mono);
    auto res = exact_result(spectral_radius(m), "proven");
    res.certificate.push_back({"closed-form", {{"shape", "monomial"},
                                               {"matrix", matrix_str(m)},
                                               {"rule", "dynamical degree equals the spectral radius of the exponent matrix"}}});
    return res;
  }
  if (auto nf = try_perm_elem_normal_form(f)) {
    PermElemDegree pd = perm_elem_dynamical_degree(*nf);
    auto res = exact_result(pd.lambda, "proven");
    std::vector<std::pair<std::string, std::string>> data{{"shape", "permutation-elementary"},
                                                          {"normal-form", nf->normal.str()},
                                                          {"m", std::to_string(nf->m)}};
    if (pd.low_degree) {
      data.emplace_back("rule", "p has degree at most 1 in the cycle variables, so the degree equals that of a permutation");
    } else {
      std::string ex;
      for (std::size_t j = nf->m; j < nf->n; ++j) ex += (ex.empty() ? "" : ",") + std::to_string(pd.exponent[j]);
      data.emplace_back("exponents", ex);
      data.emplace_back("mu", WeightVector(*pd.mu).str(kDigits));
      data.emplace_back("rule", "largest root of x^(n-m) - sum_j i_j x^(n-j), maximized over the monomials of p");
    }
    res.certificate.push_back({"closed-form", data});
    return res;
  }
  if (n == 3 && (is_permutation_triangular_automorphism(f) || factor_affine_triangular(f))) {
    try {
      auto res = affine_triangular_A3_dynamical_degree(f, cfg.matrices);
      res.certificate.insert(res.certificate.begin(), {"closed-form", {{"shape", "affine-triangular automorphism of A^3"}}});
      return res;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain) throw;
    }
  }
  hit = false;
  return {};
}

DynamicalDegreeResult solve(const Endomorphism& f, const EngineConfig& cfg);

// One maximal eigenvector: stability plus, when mu has zeros, the split recursion.
DynamicalDegreeResult use_eigenvector(const Endomorphism& f, const EngineConfig& cfg, const MaxEigenData& me,
                                      const WeightVector& mu) {
  std::size_t n = f.arity();
  const RealAlgebraic& theta = me.theta;
  const RealAlgebraic one = RealAlgebraic::from_int(1);
  unsigned horizon = cfg.horizon ? cfg.horizon : static_cast<unsigned>(2 * n + 4);
  StabilityReport st = stability_test(f, mu, horizon, cfg.budget);
  CertStep stab{"stability",
                {{"mu", mu.str(kDigits)},
                 {"verdict", verdict_name(st.verdict)},
                 {"r", std::to_string(st.r)},
                 {"reason", st.reason},
                 {"leading-part", st.leading_part.str()}}};
  bool stable = st.verdict != StabilityVerdict::UnstableAt;
  std::string stable_basis = st.verdict == StabilityVerdict::StableProven ? "proven" : "evidence-based";

  std::vector<std::size_t> zeros = mu.zero_indices();
  DynamicalDegreeResult res;
  if (zeros.empty()) {
    if (stable) {
      res = exact_result(theta, stable_basis);
      res.certificate.push_back(stab);
      res.certificate.push_back({"conclusion", {{"rule", "stable for a maximal eigenvector, so lambda = theta"}}});
    } else {
      res = bracket_result(one, theta, true);
      res.certificate.push_back(stab);
      res.certificate.push_back(
          {"conclusion", {{"rule", "unstable for a strictly positive maximal eigenvector, so lambda < theta"}}});
    }
    return res;
  }

  // Put the zero-weight coordinates first; their components only involve them.
  std::vector<std::size_t> perm(n);
  std::vector<bool> is_zero(n, false);
  for (auto z : zeros) is_zero[z] = true;
  std::size_t m = 0, next = zeros.size();
  for (std::size_t i = 0; i < n; ++i) perm[i] = is_zero[i] ? m++ : next++;
  std::vector<Polynomial> comps(n, Polynomial(n));
  for (std::size_t i = 0; i < n; ++i) comps[perm[i]] = f[i].remap(n, perm);
  Endomorphism fp(std::move(comps));
  SplitData split = dinh_nguyen_split(fp, m, 0);
  DynamicalDegreeResult sub = solve(split.fhat, cfg);
  CertStep sp{"split",
              {{"zero-weight coordinates", std::to_string(m)}, {"fhat", split.fhat.str()}, {"lambda(fhat)", summarize(sub)}}};

  // lambda(fhat) <= lambda(f) <= theta always
  int hat_vs_theta;
  if (sub.exact) {
    hat_vs_theta = compare(*sub.value, theta);
  } else {
    int c = compare(sub.upper, theta);
    hat_vs_theta = (c < 0 || (c == 0 && sub.upper_strict)) ? -1 : 2;  // 2: undetermined
  }
  if (hat_vs_theta > 0 && hat_vs_theta != 2)
    fail(ErrorKind::Internal, "dynamical degree of the split part exceeds the maximal eigenvalue");

  if (hat_vs_theta == 0) {
    res = exact_result(theta, sub.basis);
    res.certificate.push_back(stab);
    res.certificate.push_back(sp);
    res.certificate.push_back({"conclusion", {{"rule", "lambda(fhat) = theta, so lambda = theta"}}});
  } else if (stable) {
    res = exact_result(theta, stable_basis);
    res.certificate.push_back(stab);
    res.certificate.push_back(sp);
    res.certificate.push_back({"conclusion", {{"rule", "stable for a maximal eigenvector, so lambda = theta"}}});
  } else {
    bool strict = hat_vs_theta == -1;
    res = bracket_result(max_of(one, sub.lower), theta, strict);
    res.certificate.push_back(stab);
    res.certificate.push_back(sp);
    res.certificate.push_back(
        {"conclusion",
         {{"rule", strict ? "lambda(fhat) < theta and unstable, so lambda(fhat) <= lambda < theta"
                          : "unstable and lambda(fhat) undetermined against theta"}}});
  }
  for (const auto& s : sub.certificate) {
    CertStep c = s;
    c.step = "fhat:" + c.step;
    res.certificate.push_back(std::move(c));
  }
  return res;
}

DynamicalDegreeResult solve(const Endomorphism& f, const EngineConfig& cfg) {
  bool hit = false;
  DynamicalDegreeResult cf = closed_form(f, cfg, hit);
  if (hit) return cf;

  MaxEigenData me = maximal_eigenvector(f, cfg.matrices);
  CertStep eig{"maximal-eigenvalue",
               {{"theta", me.theta.decimal(kDigits)},
                {"theta-polynomial", int_poly_str(me.theta.defining())},
                {"witness", matrix_str(me.witness)},
                {"matrices-examined", std::to_string(me.matrices_examined)},
                {"eigenvector-source", me.eigenvector_source}}};
  if (compare(me.theta, mpq_class(1)) == 0) {
    auto res = exact_result(me.theta, "proven");
    res.certificate.push_back(eig);
    res.certificate.push_back({"conclusion", {{"rule", "1 <= lambda <= theta = 1"}}});
    return res;
  }
  std::vector<WeightVector> cands{*me.mu};
  cands.insert(cands.end(), me.alternatives.begin(), me.alternatives.end());
  std::optional<DynamicalDegreeResult> best;
  RealAlgebraic lo = RealAlgebraic::from_int(1);
  bool strict = false;
  for (const auto& mu : cands) {
    DynamicalDegreeResult r = use_eigenvector(f, cfg, me, mu);
    if (!r.exact) {
      lo = max_of(lo, r.lower);
      strict = strict || r.upper_strict;
    }
    if (!best || rank_of(r) > rank_of(*best)) best = std::move(r);
    if (rank_of(*best) == 2) break;
  }
  if (!best->exact) {
    best->lower = lo;
    best->upper_strict = strict;
  }
  best->certificate.insert(best->certificate.begin(), eig);
  return *best;
}

}  // namespace

DynamicalDegreeResult dynamical_degree(const Endomorphism& f, const EngineConfig& cfg) {
  if (!is_dominant(f)) fail(ErrorKind::Domain, "not dominant: Jacobian determinant identically zero");
  DynamicalDegreeResult res = solve(f, cfg);
  if (!cfg.run_oracle) return res;
  res.oracle = oracle_degree_sequence(f, cfg.oracle_depth, cfg.budget);
  if (res.exact) {
    bool ok = oracle_agrees(res.oracle, *res.value, cfg.tolerance);
    res.oracle_consistent = ok;
    if (!ok && res.basis == "evidence-based") {
      RealAlgebraic theta = *res.value;
      res.exact = false;
      res.basis = "bracket";
      res.value.reset();
      res.lower = RealAlgebraic::from_int(1);
      res.upper = theta;
      res.upper_strict = false;
      res.certificate.push_back(
          {"downgrade", {{"rule", "stability only checked up to the horizon and the degree sequence does not confirm theta"}}});
    }
  } else {
    double lo = res.lower.to_double(), hi = res.upper.to_double();
    bool ok = true;
    for (const auto& row : res.oracle.rows)
      if (row.degree > 0 && row.root < lo * (1 - 1e-12)) ok = false;
    if (res.oracle.estimate && *res.oracle.estimate > hi + cfg.tolerance) ok = false;
    res.oracle_consistent = ok;
  }
  return res;
}

}  // namespace ddeg
