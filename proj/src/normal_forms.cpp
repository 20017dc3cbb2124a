#include "ddeg/normal_forms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "ddeg/errors.hpp"
#include "ddeg/matrices.hpp"

namespace ddeg {

// ---------------------------------------------------------------------------
// Rational matrices and affine maps

mpq_class determinant(const QMatrix& m0) {
  QMatrix m = m0;
  std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

QMatrix matrix_inverse(const QMatrix& m0) {
  std::size_t n = m0.size();
  QMatrix a = m0;
  QMatrix inv(n, std::vector<mpq_class>(n, mpq_class(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) fail(ErrorKind::Domain, "matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    mpq_class s = 1 / a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= s;
      inv[c][k] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

static QMatrix identity_matrix(std::size_t n) {
  QMatrix m(n, std::vector<mpq_class>(n, mpq_class(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

AffineMap AffineMap::identity(std::size_t n) { return {identity_matrix(n), std::vector<mpq_class>(n, mpq_class(0))}; }

AffineMap AffineMap::from_endomorphism(const Endomorphism& f) {
  std::size_t n = f.arity();
  if (f.degree() > 1) fail(ErrorKind::Domain, "map is not affine");
  AffineMap a{QMatrix(n, std::vector<mpq_class>(n, mpq_class(0))), std::vector<mpq_class>(n, mpq_class(0))};
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : f[i].terms()) {
      auto d = monomial_degree(t.mono);
      if (d == 0) {
        a.translation[i] = t.coeff;
        continue;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (t.mono[j]) a.linear[i][j] = t.coeff;
    }
  }
  if (determinant(a.linear) == 0) fail(ErrorKind::Domain, "affine map is not invertible");
  return a;
}

Endomorphism AffineMap::to_endomorphism() const {
  std::size_t n = arity();
  std::vector<Polynomial> c;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial p = Polynomial::constant(n, translation[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (linear[i][j] != 0) p = p + linear[i][j] * Polynomial::variable(n, j);
    c.push_back(std::move(p));
  }
  return Endomorphism(std::move(c));
}

AffineMap AffineMap::inverse() const {
  QMatrix inv = matrix_inverse(linear);
  std::vector<mpq_class> t(arity(), mpq_class(0));
  for (std::size_t i = 0; i < arity(); ++i)
    for (std::size_t j = 0; j < arity(); ++j) t[i] -= inv[i][j] * translation[j];
  return {inv, t};
}

bool AffineMap::is_identity() const {
  return linear == identity_matrix(arity()) &&
         std::all_of(translation.begin(), translation.end(), [](const mpq_class& x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Shapes

namespace {

// p = xi * x_k + rest with rest in k[x_0..x_{k-1}] and xi a non-zero constant.
bool split_linear(const Polynomial& p, std::size_t k, mpq_class& xi, Polynomial& rest) {
  std::vector<Term> r;
  xi = 0;
  for (const auto& t : p.terms()) {
    bool uses_k_or_above = false;
    for (std::size_t j = k; j < t.mono.size(); ++j) uses_k_or_above = uses_k_or_above || t.mono[j];
    if (!uses_k_or_above) {
      r.push_back(t);
      continue;
    }
    if (monomial_degree(t.mono) != 1 || t.mono[k] != 1) return false;
    xi = t.coeff;
  }
  if (xi == 0) return false;
  rest = Polynomial(p.arity(), std::move(r));
  return true;
}

// p = x_j exactly
std::optional<std::size_t> plain_variable(const Polynomial& p) {
  if (p.num_terms() != 1 || p.terms()[0].coeff != 1) return std::nullopt;
  const Monomial& m = p.terms()[0].mono;
  if (monomial_degree(m) != 1) return std::nullopt;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (m[j]) return j;
  return std::nullopt;
}

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

Polynomial mono(std::size_t n, std::vector<Exponent> e, const mpq_class& c = 1) {
  e.resize(n, 0);
  return Polynomial::monomial(n, std::move(e), c);
}

}  // namespace

std::optional<PermutationTriangular> as_permutation_triangular(const Endomorphism& f) {
  std::size_t n = f.arity();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f[a].variable_span() < f[b].variable_span(); });
  PermutationTriangular pt;
  pt.sigma.assign(n, 0);
  std::vector<Polynomial> tau(n, Polynomial(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (f[order[k]].variable_span() > k + 1) return std::nullopt;
    pt.sigma[order[k]] = k;
    tau[k] = f[order[k]];
  }
  pt.tau = Endomorphism(std::move(tau));
  return pt;
}

bool is_permutation_triangular_automorphism(const Endomorphism& f) {
  auto pt = as_permutation_triangular(f);
  if (!pt) return false;
  for (std::size_t k = 0; k < f.arity(); ++k) {
    mpq_class xi;
    Polynomial rest;
    if (!split_linear(pt->tau[k], k, xi, rest)) return false;
  }
  return true;
}

std::optional<AffineTriangularFactor> factor_affine_triangular(const Endomorphism& f) {
  std::size_t n = f.arity();
  // columns: non-constant monomials, highest variable span first
  std::map<Monomial, std::size_t> col_of;
  std::vector<Monomial> cols;
  for (const auto& p : f.components())
    for (const auto& t : p.terms())
      if (monomial_degree(t.mono) > 0 && !col_of.count(t.mono)) {
        col_of[t.mono] = 0;
        cols.push_back(t.mono);
      }
  auto span = [](const Monomial& m) {
    std::size_t s = 0;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j]) s = j + 1;
    return s;
  };
  std::stable_sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) {
    if (span(a) != span(b)) return span(a) > span(b);
    return grlex_less(b, a);
  });
  for (std::size_t j = 0; j < cols.size(); ++j) col_of[cols[j]] = j;
  std::size_t nc = cols.size();
  QMatrix rows(n, std::vector<mpq_class>(nc, mpq_class(0)));
  std::vector<mpq_class> c(n, mpq_class(0));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : f[i].terms()) {
      if (monomial_degree(t.mono) == 0) c[i] = t.coeff;
      else rows[i][col_of[t.mono]] = t.coeff;
    }
  QMatrix r = rows;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < nc && row < n; ++col) {
    std::size_t p = row;
    while (p < n && r[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(r[p], r[row]);
    mpq_class s = 1 / r[row][col];
    for (auto& x : r[row]) x *= s;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == row || r[k][col] == 0) continue;
      mpq_class fct = r[k][col];
      for (std::size_t j = 0; j < nc; ++j) r[k][j] -= fct * r[row][j];
    }
    piv.push_back(col);
    ++row;
  }
  if (piv.size() != n) return std::nullopt;
  // rows of the echelon form, lowest variable span first, become tau_1..tau_n
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return span(cols[piv[a]]) < span(cols[piv[b]]); });
  std::vector<Polynomial> tau;
  std::vector<std::size_t> tau_piv;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t q = order[k];
    if (span(cols[piv[q]]) > k + 1) return std::nullopt;
    std::vector<Term> ts;
    for (std::size_t j = 0; j < nc; ++j)
      if (r[q][j] != 0) ts.push_back(Term{cols[j], r[q][j]});
    tau.emplace_back(n, std::move(ts));
    tau_piv.push_back(piv[q]);
  }
  AffineTriangularFactor out;
  out.alpha.linear.assign(n, std::vector<mpq_class>(n, mpq_class(0)));
  out.alpha.translation = c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) out.alpha.linear[i][k] = rows[i][tau_piv[k]];
  out.tau = Endomorphism(std::move(tau));
  if (compose(out.alpha.to_endomorphism(), out.tau) != f)
    fail(ErrorKind::Internal, "affine-triangular factorization does not reproduce the map");
  return out;
}

bool ShapeInfo::has(const std::string& s) const { return std::find(shapes.begin(), shapes.end(), s) != shapes.end(); }

ShapeInfo classify_shape(const Endomorphism& f) {
  std::size_t n = f.arity();
  ShapeInfo info;
  auto add = [&](const char* s) { info.shapes.emplace_back(s); };

  bool perm = true;
  {
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n && perm; ++i) {
      auto v = plain_variable(f[i]);
      if (!v || used[*v]) perm = false;
      else used[*v] = true;
    }
  }
  if (perm) add("permutation");
  if (f.degree() <= 1) {
    try {
      AffineMap::from_endomorphism(f);
      add("affine");
    } catch (const Error&) {
    }
  }
  if (n >= 2) {
    mpq_class xi;
    Polynomial rest;
    bool sl = split_linear(f[0], n - 1, xi, rest) && xi == 1;
    for (std::size_t i = 1; i < n && sl; ++i) sl = plain_variable(f[i]) == std::optional<std::size_t>(i - 1);
    if (sl) add("shift-like");
  }
  {
    bool el = true;
    for (std::size_t i = 0; i + 1 < n && el; ++i) el = plain_variable(f[i]) == std::optional<std::size_t>(i);
    mpq_class xi;
    Polynomial rest;
    if (el && split_linear(f[n - 1], n - 1, xi, rest)) add("elementary");
  }
  if (try_perm_elem_normal_form(f)) add("permutation-elementary");
  if (is_triangular(f)) add("triangular");
  if (as_permutation_triangular(f)) add("permutation-triangular");
  info.factor = factor_affine_triangular(f);
  if (info.factor) add("affine-triangular");
  info.primary = "other";
  for (const char* s : {"permutation", "affine", "shift-like", "elementary", "permutation-elementary", "triangular",
                        "permutation-triangular", "affine-triangular"})
    if (info.has(s)) {
      info.primary = s;
      break;
    }
  return info;
}

// ---------------------------------------------------------------------------
// Bruhat

void bruhat_factor(const QMatrix& a, QMatrix& l1, QMatrix& l2, std::vector<std::size_t>& sigma) {
  std::size_t n = a.size();
  QMatrix m = a;
  l1 = identity_matrix(n);
  l2 = identity_matrix(n);
  sigma.assign(n, 0);
  // Columns right to left; the pivot is the topmost non-zero entry, so that only
  // "add a multiple of an upper row to a lower row" and "add a multiple of a right
  // column to a left column" are needed, both lower-triangular operations.
  for (std::size_t c = n; c-- > 0;) {
    std::size_t r = 0;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) fail(ErrorKind::Domain, "linear part is singular");
    mpq_class piv = m[r][c];
    for (std::size_t k = r + 1; k < n; ++k) {
      if (m[k][c] == 0) continue;
      mpq_class fct = m[k][c] / piv;
      for (std::size_t j = 0; j < n; ++j) {
        m[k][j] -= fct * m[r][j];
        l1[k][j] -= fct * l1[r][j];
      }
    }
    for (std::size_t k = 0; k < c; ++k) {
      if (m[r][k] == 0) continue;
      mpq_class fct = m[r][k] / piv;
      for (std::size_t i = 0; i < n; ++i) {
        m[i][k] -= fct * m[i][c];
        l2[i][k] -= fct * l2[i][c];
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      m[r][j] /= piv;
      l1[r][j] /= piv;
    }
    sigma[r] = c;
  }
}

BruhatResult bruhat_conjugate(const AffineMap& alpha, const Endomorphism& tau) {
  if (!is_triangular(tau)) fail(ErrorKind::Domain, "second factor is not triangular");
  if (determinant(alpha.linear) == 0) fail(ErrorKind::Domain, "affine factor is not invertible");
  std::size_t n = alpha.arity();
  QMatrix l1, l2;
  std::vector<std::size_t> sigma;
  bruhat_factor(alpha.linear, l1, l2, sigma);
  BruhatResult out;
  out.conjugator = AffineMap{matrix_inverse(l1), std::vector<mpq_class>(n, mpq_class(0))};
  AffineMap l1_map{l1, std::vector<mpq_class>(n, mpq_class(0))};
  Endomorphism f = compose(alpha.to_endomorphism(), tau);
  out.conjugated = compose(l1_map.to_endomorphism(), compose(f, out.conjugator.to_endomorphism()));
  auto pt = as_permutation_triangular(out.conjugated);
  if (!pt) fail(ErrorKind::Internal, "Bruhat conjugate is not permutation-triangular");
  out.result = *pt;
  return out;
}

// ---------------------------------------------------------------------------
// Permutation-elementary

std::optional<PermElemNormalForm> try_perm_elem_normal_form(const Endomorphism& h) {
  std::size_t N = h.arity();
  std::vector<std::optional<std::size_t>> pv(N);
  for (std::size_t i = 0; i < N; ++i) pv[i] = plain_variable(h[i]);
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<long> holder(N, -1);
    bool ok = true;
    for (std::size_t i = 0; i < N && ok; ++i) {
      if (i == k) continue;
      if (!pv[i] || holder[*pv[i]] >= 0) ok = false;
      else holder[*pv[i]] = static_cast<long>(i);
    }
    if (!ok) continue;
    std::size_t e = 0;
    while (holder[e] >= 0) ++e;
    // h_k = xi x_e + p, p free of x_e
    mpq_class xi = 0;
    std::vector<Term> rest;
    for (const auto& t : h[k].terms()) {
      if (!t.mono[e]) {
        rest.push_back(t);
        continue;
      }
      if (monomial_degree(t.mono) != 1) {
        ok = false;
        break;
      }
      xi = t.coeff;
    }
    if (!ok || xi == 0) continue;
    // chain k -> position holding x_k -> ... -> e
    std::vector<std::size_t> chain{k};
    while (chain.back() != e) chain.push_back(static_cast<std::size_t>(holder[chain.back()]));
    std::size_t n = N - 1;
    std::size_t L = chain.size() - 1;
    PermElemNormalForm nf;
    nf.n = n;
    nf.m = n - L;
    nf.xi = xi;
    nf.conj.assign(N, 0);
    std::vector<bool> in_chain(N, false);
    for (std::size_t t = 0; t < chain.size(); ++t) {
      nf.conj[chain[t]] = nf.m + t;
      in_chain[chain[t]] = true;
    }
    std::size_t next = 0;
    for (std::size_t i = 0; i < N; ++i)
      if (!in_chain[i]) nf.conj[i] = next++;
    std::vector<Polynomial> comps(N, Polynomial(N));
    for (std::size_t i = 0; i < N; ++i) comps[nf.conj[i]] = h[i].remap(N, nf.conj);
    nf.normal = Endomorphism(std::move(comps));
    for (std::size_t i = 0; i < nf.m; ++i) nf.fhat.push_back(*plain_variable(nf.normal[i]));
    nf.p = Polynomial(N, std::move(rest)).remap(N, nf.conj);
    return nf;
  }
  return std::nullopt;
}

PermElemNormalForm perm_elem_normal_form(const Endomorphism& h) {
  auto nf = try_perm_elem_normal_form(h);
  if (!nf) fail(ErrorKind::Domain, "map is not permutation-elementary");
  return *nf;
}

PermElemDegree perm_elem_dynamical_degree(const PermElemNormalForm& nf) {
  PermElemDegree out;
  std::size_t n = nf.n, m = nf.m;
  std::vector<std::size_t> vars;
  for (std::size_t j = m; j < n; ++j) vars.push_back(j);
  Degree dpart = vars.empty() || nf.p.is_zero() ? 0 : nf.p.partial_degree(vars);
  if (dpart <= 1) {
    out.low_degree = true;
    out.lambda = RealAlgebraic::from_int(1);
    return out;
  }
  bool have = false;
  for (const auto& t : nf.p.terms()) {
    // x^{n-m} - sum_j i_j x^{n-1-j}
    std::vector<mpq_class> q(n - m + 1, mpq_class(0));
    q[n - m] = 1;
    for (std::size_t j = m; j < n; ++j) q[n - 1 - j] -= static_cast<unsigned long>(t.mono[j]);
    auto r = largest_real_root(QPoly(q));
    if (!r) continue;
    if (!have || compare(*r, out.lambda) > 0) {
      out.lambda = *r;
      out.exponent = t.mono;
      have = true;
    }
  }
  NFElem th = algebraic_to_nf(out.lambda);
  std::vector<NFElem> mu(n + 1, NFElem(0));
  NFElem pw(1);
  for (std::size_t t = n + 1; t-- > m;) {
    mu[t] = pw;
    pw = pw * th;
  }
  out.mu = mu;
  return out;
}

// ---------------------------------------------------------------------------
// Dimension three

namespace {

bool in_x1_only(const Polynomial& p) { return p.variable_span() <= 1; }

struct A3Parts {
  mpq_class xi2, xi3;
  Polynomial p1, p2, p3;
};

// form (i): (xi3 x3 + p3(x1,x2), p1(x1), xi2 x2 + p2(x1)), deg p1 = 1
bool match_form_i(const Endomorphism& f, A3Parts& a) {
  if (f.arity() != 3) return false;
  if (!split_linear(f[0], 2, a.xi3, a.p3)) return false;
  if (!in_x1_only(f[1]) || f[1].total_degree() != 1) return false;
  a.p1 = f[1];
  if (!split_linear(f[2], 1, a.xi2, a.p2)) return false;
  return in_x1_only(a.p2);
}

// form (ii): (xi2 x2 + p2(x1), xi3 x3 + p3(x1,x2), p1(x1)), deg p1 = 1
bool match_form_ii(const Endomorphism& f, A3Parts& a) {
  if (f.arity() != 3) return false;
  if (!split_linear(f[0], 1, a.xi2, a.p2) || !in_x1_only(a.p2)) return false;
  if (!split_linear(f[1], 2, a.xi3, a.p3)) return false;
  if (!in_x1_only(f[2]) || f[2].total_degree() != 1) return false;
  a.p1 = f[2];
  return true;
}

}  // namespace

std::string a3_unstable_form(const Endomorphism& f, const NFElem& theta) {
  A3Parts a;
  if (match_form_i(f, a) && a.p2.total_degree() >= 2 &&
      nf_equal(theta * theta, NFElem(static_cast<long>(a.p2.total_degree()))))
    return "i";
  if (match_form_ii(f, a) && a.p2.total_degree() >= 2 && nf_equal(theta, NFElem(static_cast<long>(a.p2.total_degree()))))
    return "ii";
  return "";
}

ReduceStep reduce_A3_step(const Endomorphism& f, const MatrixBudget& budget) {
  if (f.arity() != 3) fail(ErrorKind::Domain, "reduction step needs a map of A^3");
  if (!is_permutation_triangular_automorphism(f))
    fail(ErrorKind::Domain, "reduction step needs a permutation-triangular automorphism");
  ReduceStep st;
  st.result = f;
  st.conjugator = Endomorphism::identity(3);
  MaxEigenData me = maximal_eigenvalue(f, budget);
  st.theta = me.theta;
  if (compare(me.theta, mpq_class(1)) == 0) {
    st.reason = "maximal eigenvalue is 1";
    return st;
  }
  std::string form = a3_unstable_form(f, me.theta_nf);
  if (form.empty()) {
    st.reason = "neither instability shape applies, so the map is stable for every maximal eigenvector";
    return st;
  }
  A3Parts a;
  Endomorphism h, hinv;
  Degree d = 0;
  if (form == "i") {
    match_form_i(f, a);
    d = a.p2.total_degree();
    mpq_class c = a.p3.coeff(Monomial{0, static_cast<Exponent>(d), 0});
    if (c == 0) {
      st.reason = "shape (i) without the x2^" + std::to_string(d) + " term, so the map is stable";
      return st;
    }
    Polynomial s = mono(3, {0, static_cast<Exponent>(d), 0}, c / a.xi3);
    h = Endomorphism({var(3, 0), var(3, 1), var(3, 2) + s});
    hinv = Endomorphism({var(3, 0), var(3, 1), var(3, 2) - s});
  } else {
    match_form_ii(f, a);
    d = a.p2.total_degree();
    mpq_class c = a.p2.coeff(Monomial{static_cast<Exponent>(d), 0, 0});
    Polynomial s = mono(3, {static_cast<Exponent>(d), 0, 0}, c / a.xi2);
    h = Endomorphism({var(3, 0), var(3, 1) + s, var(3, 2)});
    hinv = Endomorphism({var(3, 0), var(3, 1) - s, var(3, 2)});
  }
  Endomorphism g = compose(h, compose(f, hinv));
  A3Parts b;
  bool same_shape = form == "i" ? match_form_i(g, b) : match_form_ii(g, b);
  Degree d2 = same_shape ? b.p2.total_degree() : d;
  // An unstable map always admits this conjugation with these degree drops; failing them means stable.
  Degree e1 = a.p3.total_degree(), e2 = same_shape ? b.p3.total_degree() : e1;
  bool p3_ok = form == "i" ? e2 <= e1 : e2 < e1;
  if (!same_shape || d2 >= d || !p3_ok) {
    st.reason = "shape (" + form + ") but the conjugation does not lower deg p2" +
                (form == "i" ? " while keeping deg p3" : " and deg p3") + ", so the map is stable";
    return st;
  }
  st.kind = ReduceStep::Kind::Reduced;
  st.result = g;
  st.conjugator = h;
  st.reason = "shape (" + form + "): deg p2 drops from " + std::to_string(d) + " to " +
              (d2 == kNegInfDegree ? std::string("-inf") : std::to_string(d2));
  return st;
}

DynamicalDegreeResult affine_triangular_A3_dynamical_degree(const Endomorphism& f, const MatrixBudget& budget) {
  if (f.arity() != 3) fail(ErrorKind::Domain, "expected a map of A^3");
  DynamicalDegreeResult res;
  Endomorphism cur = f;
  if (!is_permutation_triangular_automorphism(f)) {
    auto fac = factor_affine_triangular(f);
    if (!fac) fail(ErrorKind::Domain, "map does not factor as affine o triangular");
    if (!is_permutation_triangular_automorphism(fac->tau))
      fail(ErrorKind::Domain, "triangular factor is not an automorphism");
    BruhatResult br = bruhat_conjugate(fac->alpha, fac->tau);
    cur = br.conjugated;
    if (!is_permutation_triangular_automorphism(cur))
      fail(ErrorKind::Internal, "Bruhat conjugate is not a permutation-triangular automorphism");
    res.certificate.push_back(
        {"bruhat", {{"conjugator", br.conjugator.to_endomorphism().str()}, {"result", cur.str()}}});
  }
  Degree start_deg = cur.degree();
  for (Degree step = 0; step <= start_deg + 2; ++step) {
    ReduceStep st = reduce_A3_step(cur, budget);
    if (st.kind == ReduceStep::Kind::AlreadyGood) {
      res.certificate.push_back({"reduction-final",
                                 {{"map", cur.str()}, {"theta", st.theta.decimal(20)}, {"reason", st.reason}}});
      res.exact = true;
      res.basis = "proven";
      res.value = st.theta;
      res.lower = res.upper = st.theta;
      return res;
    }
    if (st.result.degree() > cur.degree()) fail(ErrorKind::Internal, "reduction step increased the degree");
    res.certificate.push_back({"reduction-step", {{"conjugator", st.conjugator.str()}, {"result", st.result.str()},
                                                  {"reason", st.reason}}});
    cur = st.result;
  }
  fail(ErrorKind::Internal, "reduction loop did not terminate");
}

// ---------------------------------------------------------------------------
// Enumerators

namespace {

SpectrumEntry make_entry(long a, long b, long c, long k, int first_degree) {
  SpectrumEntry e;
  e.a = a;
  e.b = b;
  e.c = c;
  e.first_degree = first_degree;
  e.degrees = {first_degree};
  e.quadratic = {mpz_class(-k), mpz_class(-a), mpz_class(1)};
  if (k == 0) {
    e.value = RealAlgebraic::from_int(a);
  } else {
    e.value = *largest_real_root(e.quadratic);
  }
  auto ue = [](long v) { return static_cast<Exponent>(v); };
  Endomorphism w1({var(3, 2) + mono(3, {ue(a), ue(b), 0}), var(3, 1) + mono(3, {ue(c), 0, 0}), var(3, 0)});
  Endomorphism w2({var(3, 2) + mono(3, {ue(a), ue(b * c), 0}), var(3, 0), var(3, 1)});
  e.witnesses = {w1.str(), w2.str()};
  return e;
}

std::vector<SpectrumEntry> dedupe(std::vector<SpectrumEntry> all) {
  std::stable_sort(all.begin(), all.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    int c = compare(x.value, y.value);
    if (c != 0) return c < 0;
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  });
  std::vector<SpectrumEntry> out;
  for (auto& e : all) {
    if (!out.empty() && compare(out.back().value, e.value) == 0) {
      auto& b = out.back();
      b.first_degree = std::min(b.first_degree, e.first_degree);
      b.degrees.insert(std::upper_bound(b.degrees.begin(), b.degrees.end(), e.degrees[0]), e.degrees[0]);
      b.degrees.erase(std::unique(b.degrees.begin(), b.degrees.end()), b.degrees.end());
      continue;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<SpectrumEntry> enumerate_affine_triangular_set_A3(int d) {
  if (d < 1) fail(ErrorKind::Domain, "degree must be at least 1");
  std::vector<SpectrumEntry> all;
  for (long a = 0; a <= d; ++a)
    for (long b = 0; a + b <= d; ++b)
      for (long c = 0; c <= d; ++c) {
        long k = b * c;
        if (a == 0 && k == 0) continue;
        all.push_back(make_entry(a, b, c, k, static_cast<int>(std::max(a + b, c))));
      }
  return dedupe(std::move(all));
}

std::vector<SpectrumEntry> enumerate_shiftlike_set_A3(int d) {
  if (d < 1) fail(ErrorKind::Domain, "degree must be at least 1");
  std::vector<SpectrumEntry> all;
  for (long e = 1; e <= d; ++e)
    for (long a = 0; a <= e; ++a) all.push_back(make_entry(a, e - a, 1, e - a, static_cast<int>(e)));
  return dedupe(std::move(all));
}

}  // namespace ddeg
