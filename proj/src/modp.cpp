#include "modp.hpp"

#include <algorithm>
#include <map>

#include "ddeg/errors.hpp"

namespace ddeg::modp {

std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inverse(std::uint64_t a) {
  if (a == 0) fail(ErrorKind::Internal, "inverse of zero modulo p");
  return power(a, P - 2);
}

std::uint64_t from_rational(const mpq_class& q) {
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), P);
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), P);
  if (d == 0) fail(ErrorKind::Internal, "coefficient denominator divisible by the working prime");
  return mul(n, inverse(d));
}

std::uint64_t eval(const Polynomial& p, const std::vector<std::uint64_t>& pt) {
  std::uint64_t s = 0;
  for (const auto& t : p.terms()) {
    std::uint64_t v = from_rational(t.coeff);
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (t.mono[i]) v = mul(v, power(pt[i], t.mono[i]));
    s = add(s, v);
  }
  return s;
}

std::uint64_t determinant(std::vector<std::vector<std::uint64_t>> m) {
  std::size_t n = m.size();
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = sub(0, det);
    }
    det = mul(det, m[c][c]);
    std::uint64_t inv = inverse(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      std::uint64_t f = mul(m[r][c], inv);
      for (std::size_t k = c; k < n; ++k) m[r][k] = sub(m[r][k], mul(f, m[c][k]));
    }
  }
  return det;
}

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

namespace {

void ntt(std::vector<std::uint64_t>& a, bool invert) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = power(7, (P - 1) / len);
    if (invert) w = inverse(w);
    std::size_t half = len / 2;
    std::vector<std::uint64_t> ws(half);
    ws[0] = 1;
    for (std::size_t k = 1; k < half; ++k) ws[k] = mul(ws[k - 1], w);
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < half; ++k) {
        std::uint64_t u = a[i + k], v = mul(a[i + k + half], ws[k]);
        a[i + k] = add(u, v);
        a[i + k + half] = sub(u, v);
      }
  }
  if (invert) {
    std::uint64_t ninv = inverse(static_cast<std::uint64_t>(n));
    for (auto& x : a) x = mul(x, ninv);
  }
}

}  // namespace

UPoly multiply(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t out = a.size() + b.size() - 1;
  if (std::min(a.size(), b.size()) <= 48) {
    UPoly r(out, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }
  std::size_t n = 1;
  while (n < out) n <<= 1;
  std::vector<std::uint64_t> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  fa.resize(n, 0);
  fb.resize(n, 0);
  ntt(fa, false);
  ntt(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mul(fa[i], fb[i]);
  ntt(fa, true);
  fa.resize(out);
  trim(fa);
  return fa;
}

ModEndo::ModEndo(const Endomorphism& f) : n(f.arity()) {
  for (const auto& p : f.components()) {
    std::vector<T> ts;
    for (const auto& t : p.terms()) ts.push_back({t.mono, from_rational(t.coeff)});
    comps.push_back(std::move(ts));
  }
}

std::vector<std::uint64_t> apply_point(const ModEndo& f, const std::vector<std::uint64_t>& pt) {
  std::vector<std::uint64_t> out(f.n, 0);
  for (std::size_t i = 0; i < f.n; ++i) {
    std::uint64_t s = 0;
    for (const auto& t : f.comps[i]) {
      std::uint64_t v = t.c;
      for (std::size_t j = 0; j < f.n; ++j)
        if (t.mono[j]) v = mul(v, power(pt[j], t.mono[j]));
      s = add(s, v);
    }
    out[i] = s;
  }
  return out;
}

namespace {

class UPolySubst {
 public:
  UPolySubst(const std::vector<UPoly>& args, std::size_t max_len) : args_(args), max_len_(max_len), pw_(args.size()) {}

  UPoly eval(const std::vector<const ModEndo::T*>& ts, std::size_t v) {
    if (v == args_.size()) {
      std::uint64_t s = 0;
      for (auto* t : ts) s = add(s, t->c);
      return s ? UPoly{s} : UPoly{};
    }
    std::map<Exponent, std::vector<const ModEndo::T*>> groups;
    for (auto* t : ts) groups[t->mono[v]].push_back(t);
    UPoly acc;
    for (auto& [e, g] : groups) {
      UPoly sub = eval(g, v + 1);
      if (e != 0 && !sub.empty()) sub = guarded(power_of(v, e), sub);
      if (sub.size() > acc.size()) acc.resize(sub.size(), 0);
      for (std::size_t k = 0; k < sub.size(); ++k) acc[k] = add(acc[k], sub[k]);
    }
    trim(acc);
    return acc;
  }

 private:
  UPoly guarded(const UPoly& a, const UPoly& b) {
    if (!a.empty() && !b.empty() && a.size() + b.size() - 1 > max_len_)
      throw ResourceError("univariate length cap of " + std::to_string(max_len_) + " exceeded");
    return multiply(a, b);
  }

  // square-and-multiply; exponents can be large for sparse high-degree maps
  const UPoly& power_of(std::size_t v, Exponent e) {
    auto& cache = pw_[v];
    if (auto it = cache.find(e); it != cache.end()) return it->second;
    const UPoly& a = args_[v];
    if (a.size() > 1 && (a.size() - 1) * std::uint64_t(e) + 1 > max_len_)
      throw ResourceError("univariate length cap of " + std::to_string(max_len_) + " exceeded");
    UPoly r{1}, base = a;
    for (Exponent k = e; k; k >>= 1) {
      if (k & 1) r = multiply(r, base);
      if (k > 1) base = multiply(base, base);
    }
    return cache.emplace(e, std::move(r)).first->second;
  }

  const std::vector<UPoly>& args_;
  std::size_t max_len_;
  std::vector<std::map<Exponent, UPoly>> pw_;
};

}  // namespace

std::vector<UPoly> apply_upoly(const ModEndo& f, const std::vector<UPoly>& args, std::size_t max_len) {
  UPolySubst s(args, max_len);
  std::vector<UPoly> out;
  for (const auto& comp : f.comps) {
    std::vector<const ModEndo::T*> ts;
    for (const auto& t : comp) ts.push_back(&t);
    out.push_back(s.eval(ts, 0));
  }
  return out;
}

}  // namespace ddeg::modp
