#include "ddeg/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "ddeg/errors.hpp"
#include "modp.hpp"

namespace ddeg {

bool grlex_less(const Monomial& a, const Monomial& b) {
  std::uint64_t da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::uint64_t monomial_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto e : m) {
    h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

namespace {

void sort_and_merge(std::vector<Term>& ts) {
  std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return grlex_less(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(ts.size());
  for (auto& t : ts) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return sgn(t.coeff) == 0; }), out.end());
  ts = std::move(out);
}

Monomial add_monomials(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t s = static_cast<std::uint64_t>(a[i]) + b[i];
    if (s > std::numeric_limits<Exponent>::max()) throw ResourceError("exponent overflow in polynomial product");
    r[i] = static_cast<Exponent>(s);
  }
  return r;
}

std::string monomial_str(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << "x" << (i + 1);
    if (m[i] > 1) os << "^" << m[i];
  }
  return os.str();
}

}  // namespace

Polynomial::Polynomial(std::size_t arity, std::vector<Term> terms) : arity_(arity), terms_(std::move(terms)) {
  for (auto& t : terms_) {
    if (t.mono.size() != arity_) fail(ErrorKind::Structural, "monomial length does not match arity");
    t.coeff.canonicalize();
  }
  sort_and_merge(terms_);
}

Polynomial Polynomial::constant(std::size_t arity, const mpq_class& c) {
  return Polynomial(arity, {Term{Monomial(arity, 0), c}});
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t i) {
  Monomial m(arity, 0);
  m.at(i) = 1;
  return Polynomial(arity, {Term{m, 1}});
}

Polynomial Polynomial::monomial(std::size_t arity, Monomial m, const mpq_class& c) {
  return Polynomial(arity, {Term{std::move(m), c}});
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_[0].mono) == 0); }

mpq_class Polynomial::constant_term() const {
  if (!terms_.empty() && monomial_degree(terms_[0].mono) == 0) return terms_[0].coeff;
  return 0;
}

mpq_class Polynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return grlex_less(t.mono, k); });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

Degree Polynomial::total_degree() const {
  if (terms_.empty()) return kNegInfDegree;
  return static_cast<Degree>(monomial_degree(terms_.back().mono));
}

Degree Polynomial::partial_degree(const std::vector<std::size_t>& vars) const {
  if (terms_.empty()) return kNegInfDegree;
  Degree best = 0;
  for (const auto& t : terms_) {
    Degree d = 0;
    for (auto v : vars) d += t.mono.at(v);
    best = std::max(best, d);
  }
  return best;
}

Degree Polynomial::degree_in(std::size_t var) const { return partial_degree({var}); }

bool Polynomial::depends_on(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono[var] != 0) return true;
  return false;
}

std::size_t Polynomial::variable_span() const {
  std::size_t s = 0;
  for (const auto& t : terms_)
    for (std::size_t i = s; i < arity_; ++i)
      if (t.mono[i] != 0) s = i + 1;
  return s;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.arity_ != b.arity_) fail(ErrorKind::Structural, "arity mismatch in polynomial sum");
  Polynomial r(a.arity_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && grlex_less(a.terms_[i].mono, b.terms_[j].mono))) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || grlex_less(b.terms_[j].mono, a.terms_[i].mono)) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      mpq_class c = a.terms_[i].coeff + b.terms_[j].coeff;
      if (sgn(c) != 0) r.terms_.push_back(Term{a.terms_[i].mono, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const mpq_class& s, const Polynomial& a) {
  if (sgn(s) == 0) return Polynomial(a.arity_);
  Polynomial r = a;
  for (auto& t : r.terms_) t.coeff *= s;
  return r;
}

Polynomial mul(const Polynomial& a, const Polynomial& b, const Budget& budget) {
  if (a.arity_ != b.arity_) fail(ErrorKind::Structural, "arity mismatch in polynomial product");
  Polynomial r(a.arity_);
  if (a.is_zero() || b.is_zero()) return r;
  const Polynomial& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const Polynomial& big = a.terms_.size() <= b.terms_.size() ? b : a;
  if (small.terms_.size() == 1) {
    // shifting by a fixed exponent preserves the order
    const Term& s = small.terms_[0];
    r.terms_.reserve(big.terms_.size());
    for (const auto& t : big.terms_) r.terms_.push_back(Term{add_monomials(t.mono, s.mono), t.coeff * s.coeff});
    r.check_budget(budget);
    return r;
  }
  std::unordered_map<Monomial, mpq_class, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), budget.max_terms + 1));
  for (const auto& s : small.terms_)
    for (const auto& t : big.terms_) {
      auto [it, fresh] = acc.try_emplace(add_monomials(s.mono, t.mono), s.coeff * t.coeff);
      if (!fresh) it->second += s.coeff * t.coeff;
      if (acc.size() > budget.max_terms)
        throw ResourceError("term budget of " + std::to_string(budget.max_terms) + " exceeded in product");
    }
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) r.terms_.push_back(Term{m, c});
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return grlex_less(x.mono, y.mono); });
  r.check_budget(budget);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return mul(a, b); }

Polynomial pow(const Polynomial& p, unsigned e, const Budget& budget) {
  Polynomial r = Polynomial::constant(p.arity(), 1), b = p;
  while (e) {
    if (e & 1) r = mul(r, b, budget);
    e >>= 1;
    if (e) b = mul(b, b, budget);
  }
  return r;
}

void Polynomial::check_budget(const Budget& b) const {
  if (terms_.size() > b.max_terms)
    throw ResourceError("term budget of " + std::to_string(b.max_terms) + " exceeded",
                        std::to_string(terms_.size()) + " terms");
  for (const auto& t : terms_) {
    std::size_t bits = mpz_sizeinbase(t.coeff.get_num_mpz_t(), 2) + mpz_sizeinbase(t.coeff.get_den_mpz_t(), 2);
    if (bits > b.max_coeff_bits)
      throw ResourceError("coefficient bit budget of " + std::to_string(b.max_coeff_bits) + " exceeded");
  }
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    Term d = t;
    d.coeff *= static_cast<unsigned long>(t.mono[var]);
    d.mono[var] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial(arity_, std::move(out));
}

Polynomial Polynomial::remap(std::size_t new_arity, const std::vector<std::size_t>& new_index) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(new_arity, 0);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (t.mono[i] == 0) continue;
      if (i >= new_index.size() || new_index[i] >= new_arity)
        fail(ErrorKind::Structural, "variable cannot be remapped into the target arity");
      m[new_index[i]] += t.mono[i];
    }
    out.push_back(Term{std::move(m), t.coeff});
  }
  return Polynomial(new_arity, std::move(out));
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = sgn(t.coeff) < 0;
    mpq_class a = abs(t.coeff);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string ms = monomial_str(t.mono);
    if (ms.empty()) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << ms;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Endomorphism::Endomorphism(std::vector<Polynomial> comps) : comps_(std::move(comps)) {
  for (const auto& c : comps_)
    if (c.arity() != comps_.size()) fail(ErrorKind::Structural, "component arity does not match component count");
}

Endomorphism Endomorphism::identity(std::size_t n) {
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(Polynomial::variable(n, i));
  return Endomorphism(std::move(c));
}

Degree Endomorphism::degree() const {
  Degree d = kNegInfDegree;
  for (const auto& c : comps_) d = std::max(d, c.total_degree());
  return d;
}

std::size_t Endomorphism::total_terms() const {
  std::size_t s = 0;
  for (const auto& c : comps_) s += c.num_terms();
  return s;
}

std::string Endomorphism::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) s += ", ";
    s += comps_[i].str();
  }
  return s + ")";
}

namespace {

class Substituter {
 public:
  Substituter(const std::vector<Polynomial>& inner, const Budget& b, std::size_t out_arity)
      : inner_(inner), budget_(b), out_arity_(out_arity), pw_(inner.size()) {}

  Polynomial eval(const Polynomial& p) {
    std::vector<const Term*> ts;
    for (const auto& t : p.terms()) ts.push_back(&t);
    return eval(ts, 0);
  }

 private:
  const Polynomial& power(std::size_t v, Exponent e) {
    auto& cache = pw_[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(out_arity_, 1));
    while (cache.size() <= e) cache.push_back(mul(cache.back(), inner_[v], budget_));
    return cache[e];
  }

  Polynomial eval(const std::vector<const Term*>& ts, std::size_t v) {
    if (v == inner_.size()) {
      mpq_class s = 0;
      for (auto* t : ts) s += t->coeff;
      return Polynomial::constant(out_arity_, s);
    }
    std::map<Exponent, std::vector<const Term*>> groups;
    for (auto* t : ts) groups[t->mono[v]].push_back(t);
    Polynomial acc(out_arity_);
    for (auto& [e, g] : groups) {
      Polynomial sub = eval(g, v + 1);
      if (e != 0) sub = mul(power(v, e), sub, budget_);
      acc = acc + sub;
      acc.check_budget(budget_);
    }
    return acc;
  }

  const std::vector<Polynomial>& inner_;
  const Budget& budget_;
  std::size_t out_arity_;
  std::vector<std::vector<Polynomial>> pw_;
};

}  // namespace

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& inner, const Budget& budget) {
  if (inner.size() != p.arity()) fail(ErrorKind::Structural, "substitution arity mismatch");
  std::size_t out = inner.empty() ? 1 : inner[0].arity();
  for (const auto& q : inner)
    if (q.arity() != out) fail(ErrorKind::Structural, "substitution arity mismatch");
  Substituter s(inner, budget, out);
  return s.eval(p);
}

Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner, const Budget& budget) {
  if (outer.arity() != inner.arity()) fail(ErrorKind::Structural, "composition arity mismatch");
  Substituter s(inner.components(), budget, inner.arity());
  std::vector<Polynomial> c;
  for (const auto& p : outer.components()) c.push_back(s.eval(p));
  return Endomorphism(std::move(c));
}

Endomorphism iterate(const Endomorphism& f, unsigned r, const Budget& budget) {
  if (r == 0) fail(ErrorKind::Domain, "iterate requires r >= 1");
  Endomorphism g = f;
  for (unsigned k = 2; k <= r; ++k) {
    try {
      g = compose(f, g, budget);
    } catch (const ResourceError& e) {
      throw ResourceError(e.what(), "completed iterates up to r=" + std::to_string(k - 1) + ", degree " +
                                        std::to_string(g.degree()));
    }
  }
  return g;
}

bool is_triangular(const Endomorphism& f) {
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (f[i].variable_span() > i + 1) return false;
  return true;
}

Polynomial jacobian_determinant(const Endomorphism& f, const Budget& budget) {
  std::size_t n = f.arity();
  if (n > 20) fail(ErrorKind::Resource, "exact Jacobian determinant limited to 20 variables");
  std::vector<std::vector<Polynomial>> j(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) j[i].push_back(f[i].derivative(k));
  // Laplace expansion along rows, memoized on the set of used columns
  std::unordered_map<std::uint32_t, Polynomial> memo;
  std::function<Polynomial(std::size_t, std::uint32_t)> det = [&](std::size_t row, std::uint32_t used) -> Polynomial {
    if (row == n) return Polynomial::constant(n, 1);
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    Polynomial acc(n);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1u << c)) continue;
      if (!j[row][c].is_zero()) {
        Polynomial sub = det(row + 1, used | (1u << c));
        if (!sub.is_zero()) {
          Polynomial t = mul(j[row][c], sub, budget);
          acc = sign > 0 ? acc + t : acc - t;
        }
      }
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return det(0, 0);
}

bool is_dominant(const Endomorphism& f) {
  std::size_t n = f.arity();
  if (is_triangular(f)) {
    for (std::size_t i = 0; i < n; ++i)
      if (f[i].degree_in(i) < 1) return false;
    return true;
  }
  std::vector<std::vector<Polynomial>> jac(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) jac[i].push_back(f[i].derivative(k));
  std::mt19937_64 rng(0xD0A11A7E5EEDULL);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::uint64_t> pt(n);
    for (auto& v : pt) v = modp::random_element(rng);
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) m[i][k] = modp::eval(jac[i][k], pt);
    if (modp::determinant(m) != 0) return true;
  }
  if (n <= 12) return !jacobian_determinant(f).is_zero();
  return false;
}

}  // namespace ddeg
