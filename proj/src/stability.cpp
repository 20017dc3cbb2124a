#include "ddeg/stability.hpp"

#include <algorithm>
#include <random>

#include "ddeg/errors.hpp"
#include "ddeg/normal_forms.hpp"
#include "modp.hpp"

namespace ddeg {

const char* verdict_name(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::StableProven:
      return "stable-proven";
    case StabilityVerdict::StableUpTo:
      return "stable-up-to";
    default:
      return "unstable-at";
  }
}

namespace {

bool single_nonzero_term(const Polynomial& p) { return p.num_terms() == 1; }

// Index of the variable when p = c * x_j, c != 0.
std::optional<std::size_t> scaled_variable(const Polynomial& p) {
  if (p.num_terms() != 1) return std::nullopt;
  const Monomial& m = p.terms()[0].mono;
  std::optional<std::size_t> var;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (!m[j]) continue;
    if (m[j] != 1 || var) return std::nullopt;
    var = j;
  }
  return var;
}

// All components but one are scaled distinct variables and the remaining one is non-zero.
// Up to a coordinate permutation this is (f_1..f_m, q, x_{m+1}..x_n) with (f_1..f_m) a scaled
// permutation, whose iterates never acquire a zero component.
bool permutation_elementary_leading(const Endomorphism& g) {
  std::size_t n = g.arity();
  for (std::size_t k = 0; k < n; ++k) {
    if (g[k].is_zero()) continue;
    std::vector<bool> used(n, false);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (i == k) continue;
      auto v = scaled_variable(g[i]);
      if (!v || used[*v]) ok = false;
      else used[*v] = true;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

StabilityReport stability_test(const Endomorphism& f, const WeightVector& mu, unsigned horizon, const Budget& budget) {
  MuDegree d = mu_degree_endo(f, mu);
  if (d.kind == MuDegree::Kind::PosInf) fail(ErrorKind::Domain, "stability test needs deg_mu(f) finite");
  if (!d.is_finite()) fail(ErrorKind::Domain, "stability test needs a non-zero endomorphism");
  const NFElem theta = d.value;
  StabilityReport rep;
  rep.leading_part = mu_leading_endo(f, mu, theta);
  const Endomorphism& g = rep.leading_part;
  std::size_t n = f.arity();
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    if (mu.positive(i)) pos.push_back(i);

  auto proven = [&](const std::string& why) {
    rep.verdict = StabilityVerdict::StableProven;
    rep.reason = why;
    return rep;
  };
  bool all_nonzero = true;
  for (const auto& c : g.components()) all_nonzero = all_nonzero && !c.is_zero();
  if (all_nonzero && std::all_of(g.components().begin(), g.components().end(), single_nonzero_term))
    return proven("leading part is a monomial map with non-zero coefficients");
  if (permutation_elementary_leading(g)) return proven("leading part is permutation-elementary");
  if (is_dominant(g)) return proven("leading part is dominant, so no iterate has a zero component");
  if (n == 3 && nf_sign(theta - NFElem(1)) > 0 && is_permutation_triangular_automorphism(f)) {
    MaxEigenData me = maximal_eigenvalue(f);
    if (nf_equal(me.theta_nf, theta) && verify_maximal_eigenvector(f, mu, theta)) {
      std::string form = a3_unstable_form(f, theta);
      if (form.empty())
        return proven("permutation-triangular automorphism of A^3 outside both instability forms");
    }
  }

  // Scan g^r at random points mod p; a vanishing pattern is confirmed by exact composition.
  modp::ModEndo mg(g);
  std::mt19937_64 rng(0x57AB1E5EEDULL);
  const int npts = 3;
  std::vector<std::vector<std::uint64_t>> pts(npts, std::vector<std::uint64_t>(n));
  for (auto& p : pts)
    for (auto& v : p) v = modp::random_element(rng);
  for (unsigned r = 1; r <= horizon; ++r) {
    for (auto& p : pts) p = modp::apply_point(mg, p);
    std::vector<bool> alive;
    bool any = false;
    for (auto i : pos) {
      bool nz = false;
      for (const auto& p : pts) nz = nz || p[i] != 0;
      alive.push_back(nz);
      any = any || nz;
    }
    if (!any && !pos.empty()) {
      try {
        Endomorphism gr = iterate(g, r, budget);
        bool zero = true;
        for (std::size_t k = 0; k < pos.size(); ++k) {
          alive[k] = !gr[pos[k]].is_zero();
          zero = zero && !alive[k];
        }
        if (zero) {
          rep.surviving.push_back(alive);
          rep.verdict = StabilityVerdict::UnstableAt;
          rep.r = r;
          rep.reason = "every positive-weight component of g^" + std::to_string(r) + " is zero (exact)";
          return rep;
        }
      } catch (const ResourceError&) {
        rep.surviving.push_back(alive);
        rep.verdict = StabilityVerdict::UnstableAt;
        rep.r = r;
        rep.reason = "positive-weight components of g^" + std::to_string(r) +
                     " vanish at random points mod p; exact confirmation exceeded the term budget";
        return rep;
      }
    }
    rep.surviving.push_back(alive);
  }
  rep.verdict = StabilityVerdict::StableUpTo;
  rep.r = horizon;
  rep.reason = "some positive-weight component of g^r is non-zero for r <= " + std::to_string(horizon);
  return rep;
}

}  // namespace ddeg
