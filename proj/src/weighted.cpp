#include "ddeg/weighted.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "ddeg/errors.hpp"

namespace ddeg {

namespace {

// Groups the terms of p by exact mu-degree. Groups come back in increasing degree.
struct DegreeGroup {
  NFElem value;
  std::vector<const Term*> terms;
};

std::vector<DegreeGroup> group_by_degree(const Polynomial& p, const WeightVector& mu) {
  std::map<std::string, DegreeGroup> by_rep;
  for (const auto& t : p.terms()) {
    NFElem d = mu_degree_monomial(t.mono, mu);
    auto key = d.rep().str();
    auto it = by_rep.find(key);
    if (it == by_rep.end()) it = by_rep.emplace(key, DegreeGroup{d, {}}).first;
    it->second.terms.push_back(&t);
  }
  std::vector<DegreeGroup> gs;
  for (auto& [k, g] : by_rep) gs.push_back(std::move(g));
  // distinct reps may still denote the same number when the modulus is reducible
  std::sort(gs.begin(), gs.end(), [](const DegreeGroup& a, const DegreeGroup& b) { return nf_compare(a.value, b.value) < 0; });
  std::vector<DegreeGroup> merged;
  for (auto& g : gs) {
    if (!merged.empty() && nf_equal(merged.back().value, g.value)) {
      merged.back().terms.insert(merged.back().terms.end(), g.terms.begin(), g.terms.end());
    } else {
      merged.push_back(std::move(g));
    }
  }
  return merged;
}

Polynomial from_terms(std::size_t arity, const std::vector<const Term*>& ts) {
  std::vector<Term> v;
  for (auto* t : ts) v.push_back(*t);
  return Polynomial(arity, std::move(v));
}

}  // namespace

WeightVector::WeightVector(std::vector<NFElem> entries) : e_(std::move(entries)) {
  if (e_.empty()) fail(ErrorKind::Domain, "empty weight vector");
  field_ = e_[0].field();
  for (const auto& x : e_) field_ = common_field(field_, x.field());
  bool any = false;
  for (auto& x : e_) {
    x = x.lift_to(field_);
    int s = nf_sign(x);
    if (s < 0) fail(ErrorKind::Domain, "weight vector has a negative entry");
    if (s > 0) any = true;
    sign_.push_back(s);
  }
  if (!any) fail(ErrorKind::Domain, "weight vector is zero");
}

WeightVector WeightVector::from_ints(const std::vector<long>& v) {
  std::vector<NFElem> e;
  for (long x : v) e.emplace_back(x);
  return WeightVector(std::move(e));
}

WeightVector WeightVector::ones(std::size_t n) { return from_ints(std::vector<long>(n, 1)); }

std::vector<std::size_t> WeightVector::zero_indices() const {
  std::vector<std::size_t> z;
  for (std::size_t i = 0; i < sign_.size(); ++i)
    if (sign_[i] == 0) z.push_back(i);
  return z;
}

std::string WeightVector::str(int digits) const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ", ";
    s += nf_to_real_algebraic(e_[i]).decimal(digits);
  }
  return s + ")";
}

std::string MuDegree::str() const {
  switch (kind) {
    case Kind::NegInf:
      return "-inf";
    case Kind::PosInf:
      return "inf";
    default:
      return nf_to_real_algebraic(value).decimal(6);
  }
}

NFElem mu_degree_monomial(const Monomial& m, const WeightVector& mu) {
  if (m.size() != mu.size()) fail(ErrorKind::Structural, "weight vector length does not match arity");
  QPoly acc;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) acc = acc + mpq_class(static_cast<unsigned long>(m[i])) * mu[i].rep();
  return NFElem(mu.field(), acc);
}

MuDegree mu_degree_poly(const Polynomial& p, const WeightVector& mu) {
  if (p.is_zero()) return MuDegree::neg_inf();
  auto gs = group_by_degree(p, mu);
  return MuDegree::finite(gs.back().value);
}

MuDegree mu_degree_endo(const Endomorphism& f, const WeightVector& mu) {
  if (f.arity() != mu.size()) fail(ErrorKind::Structural, "weight vector length does not match arity");
  std::optional<NFElem> best;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (!mu.positive(i)) {
      for (const auto& t : f[i].terms())
        for (std::size_t j = 0; j < f.arity(); ++j)
          if (t.mono[j] && mu.positive(j)) return MuDegree::pos_inf();
      continue;
    }
    MuDegree d = mu_degree_poly(f[i], mu);
    if (!d.is_finite()) continue;
    NFElem q = d.value / mu[i];
    if (!best || nf_compare(q, *best) > 0) best = q;
  }
  return MuDegree::finite(best ? *best : NFElem(0));
}

Polynomial mu_homogeneous_part(const Polynomial& p, const WeightVector& mu, const NFElem& value) {
  for (const auto& g : group_by_degree(p, mu))
    if (nf_equal(g.value, value)) return from_terms(p.arity(), g.terms);
  return Polynomial(p.arity());
}

Endomorphism mu_leading_endo(const Endomorphism& f, const WeightVector& mu, const NFElem& theta) {
  std::vector<Polynomial> g;
  for (std::size_t j = 0; j < f.arity(); ++j) g.push_back(mu_homogeneous_part(f[j], mu, theta * mu[j]));
  return Endomorphism(std::move(g));
}

Endomorphism mu_leading_endo(const Endomorphism& f, const WeightVector& mu) {
  MuDegree d = mu_degree_endo(f, mu);
  if (!d.is_finite()) fail(ErrorKind::Domain, "leading part undefined: deg_mu(f) is infinite");
  return mu_leading_endo(f, mu, d.value);
}

bool is_mu_homogeneous(const Polynomial& p, const WeightVector& mu, const NFElem& value) {
  for (const auto& t : p.terms())
    if (!nf_equal(mu_degree_monomial(t.mono, mu), value)) return false;
  return true;
}

bool is_mu_homogeneous_endo(const Endomorphism& h, const WeightVector& mu, const NFElem& theta) {
  for (std::size_t i = 0; i < h.arity(); ++i)
    if (!is_mu_homogeneous(h[i], mu, theta * mu[i])) return false;
  return true;
}

std::vector<std::pair<NFElem, Endomorphism>> decompose_endo(const Endomorphism& f, const WeightVector& mu,
                                                            const NFElem& theta) {
  MuDegree d = mu_degree_endo(f, mu);
  if (d.kind == MuDegree::Kind::PosInf || (d.is_finite() && nf_compare(d.value, theta) > 0))
    fail(ErrorKind::Domain, "deg_mu(f) exceeds the requested degree");
  std::size_t n = f.arity();
  struct Piece {
    NFElem xi;
    std::vector<std::vector<const Term*>> comp;
  };
  std::vector<Piece> pieces;
  auto slot = [&](const NFElem& xi) -> Piece& {
    for (auto& p : pieces)
      if (nf_equal(p.xi, xi)) return p;
    pieces.push_back(Piece{xi, std::vector<std::vector<const Term*>>(n)});
    return pieces.back();
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i].is_zero()) continue;
    if (!mu.positive(i)) {
      Piece& p = slot(NFElem(0));
      for (const auto& t : f[i].terms()) p.comp[i].push_back(&t);
      continue;
    }
    for (const auto& g : group_by_degree(f[i], mu)) {
      Piece& p = slot(g.value / mu[i]);
      p.comp[i].insert(p.comp[i].end(), g.terms.begin(), g.terms.end());
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return nf_compare(a.xi, b.xi) < 0; });
  std::vector<std::pair<NFElem, Endomorphism>> out;
  for (auto& p : pieces) {
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(from_terms(n, p.comp[i]));
    out.emplace_back(p.xi, Endomorphism(std::move(c)));
  }
  return out;
}

}  // namespace ddeg
