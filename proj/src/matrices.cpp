#include "ddeg/matrices.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "ddeg/errors.hpp"

namespace ddeg {

SupportFamily support_family(const Endomorphism& f) {
  SupportFamily s;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (f[i].is_zero()) fail(ErrorKind::Domain, "component " + std::to_string(i + 1) + " is zero; no contained matrix");
    std::vector<Monomial> rows;
    for (const auto& t : f[i].terms()) rows.push_back(t.mono);
    std::sort(rows.begin(), rows.end());
    s.push_back(std::move(rows));
  }
  return s;
}

static bool dominated_by(const Monomial& a, const Monomial& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return a != b;
}

SupportFamily prune_dominated(const SupportFamily& s) {
  SupportFamily out;
  for (const auto& rows : s) {
    std::vector<Monomial> keep;
    for (const auto& r : rows) {
      bool dom = std::any_of(rows.begin(), rows.end(), [&](const Monomial& o) { return dominated_by(r, o); });
      if (!dom) keep.push_back(r);
    }
    out.push_back(std::move(keep));
  }
  return out;
}

std::size_t contained_matrix_count(const SupportFamily& s) {
  std::size_t c = 1;
  for (const auto& rows : s) {
    if (rows.size() && c > std::numeric_limits<std::size_t>::max() / rows.size()) return std::numeric_limits<std::size_t>::max();
    c *= rows.size();
  }
  return c;
}

IntMatrix to_int_matrix(const ExpMatrix& m) {
  IntMatrix r;
  for (const auto& row : m) {
    std::vector<mpz_class> v;
    for (auto e : row) v.emplace_back(static_cast<unsigned long>(e));
    r.push_back(std::move(v));
  }
  return r;
}

std::string matrix_str(const ExpMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    s += "]";
  }
  return s + "]";
}

RealAlgebraic spectral_radius(const ExpMatrix& m) {
  auto r = largest_real_root(char_poly(to_int_matrix(m)));
  if (!r) fail(ErrorKind::Internal, "characteristic polynomial of a non-negative matrix without real root");
  return *r;
}

NFElem algebraic_to_nf(const RealAlgebraic& a) {
  if (auto q = a.rational_value()) return NFElem(*q);
  return NFElem::generator(make_field(a));
}

// ---------------------------------------------------------------------------

FrobeniusForm frobenius_normal_form(const ExpMatrix& m) {
  // Tarjan; components come out sinks first, which is the required block order.
  std::size_t n = m.size();
  std::vector<long> index(n, -1), low(n, 0);
  std::vector<bool> on(n, false);
  std::vector<std::size_t> stack;
  FrobeniusForm out;
  out.block_of.assign(n, 0);
  long counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!m[v][w]) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        comp.push_back(w);
        out.block_of[w] = out.blocks.size();
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.blocks.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return out;
}

namespace {

bool is_zero(const NFElem& x) { return x.is_zero_rep() || nf_sign(x) == 0; }

using NFMatrix = std::vector<std::vector<NFElem>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(NFMatrix& a, std::size_t cols) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && is_zero(a[p][c])) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    NFElem inv = a[row][c].inverse();
    for (auto& x : a[row]) x = x * inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || is_zero(a[r][c])) continue;
      NFElem f = a[r][c];
      for (std::size_t k = 0; k < a[r].size(); ++k) a[r][k] = a[r][k] - f * a[row][k];
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

// One kernel vector of a (first free variable set to 1), or none.
std::optional<std::vector<NFElem>> kernel_vector(NFMatrix a, std::size_t cols) {
  auto piv = rref(a, cols);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::size_t free = cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_piv[c]) {
      free = c;
      break;
    }
  if (free == cols) return std::nullopt;
  std::vector<NFElem> v(cols, NFElem(0));
  v[free] = NFElem(1);
  for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][free];
  return v;
}

// Solves a x = b for square invertible a (augmented form).
std::optional<std::vector<NFElem>> solve(NFMatrix a, const std::vector<NFElem>& b) {
  std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto piv = rref(a, n);
  if (piv.size() != n) return std::nullopt;
  std::vector<NFElem> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

ExpMatrix sub_matrix(const ExpMatrix& m, const std::vector<std::size_t>& idx) {
  ExpMatrix s;
  for (auto i : idx) {
    Monomial row;
    for (auto j : idx) row.push_back(m[i][j]);
    s.push_back(std::move(row));
  }
  return s;
}

void normalize(std::vector<NFElem>& v) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (!is_zero(v[i])) {
      NFElem inv = v[i].inverse();
      for (auto& x : v) x = x * inv;
      return;
    }
  }
}

NFElem dot(const Monomial& r, const std::vector<NFElem>& v) {
  NFElem s(0);
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j]) s = s + NFElem(static_cast<long>(r[j])) * v[j];
  return s;
}

bool same_vector(const std::vector<NFElem>& a, const std::vector<NFElem>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!nf_equal(a[i], b[i])) return false;
  return true;
}

double double_radius(const ExpMatrix& m) {
  std::size_t n = m.size();
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m[i][j];
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  double r = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r = std::max(r, std::abs(es.eigenvalues()[i]));
  return r;
}

}  // namespace

std::vector<std::vector<NFElem>> nonneg_eigenvectors(const ExpMatrix& m, const NFElem& theta) {
  std::size_t n = m.size();
  FrobeniusForm ff = frobenius_normal_form(m);
  RealAlgebraic th = nf_to_real_algebraic(theta);
  std::size_t nb = ff.blocks.size();
  std::vector<bool> at_theta(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    int c = compare(spectral_radius(sub_matrix(m, ff.blocks[b])), th);
    if (c > 0) fail(ErrorKind::Internal, "block spectral radius exceeds the matrix spectral radius");
    at_theta[b] = c == 0;
  }
  std::vector<std::vector<NFElem>> out;
  for (std::size_t s = nb; s-- > 0;) {
    if (!at_theta[s]) continue;
    std::vector<NFElem> v(n, NFElem(0));
    const auto& bs = ff.blocks[s];
    NFMatrix a;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      std::vector<NFElem> row;
      for (std::size_t j = 0; j < bs.size(); ++j) {
        NFElem e(static_cast<long>(m[bs[i]][bs[j]]));
        row.push_back(i == j ? e - theta : e);
      }
      a.push_back(std::move(row));
    }
    auto k = kernel_vector(std::move(a), bs.size());
    if (!k) fail(ErrorKind::Internal, "trivial kernel for a block attaining the spectral radius");
    // Perron vectors of irreducible blocks have one sign; flip to positive.
    for (const auto& x : *k) {
      int sg = nf_sign(x);
      if (sg == 0) continue;
      if (sg < 0)
        for (auto& y : *k) y = -y;
      break;
    }
    for (std::size_t i = 0; i < bs.size(); ++i) v[bs[i]] = (*k)[i];
    bool ok = true;
    for (std::size_t t = s + 1; t < nb && ok; ++t) {
      const auto& bt = ff.blocks[t];
      std::vector<NFElem> rhs;
      bool rhs_zero = true;
      for (auto i : bt) {
        NFElem acc(0);
        for (std::size_t j = 0; j < n; ++j)
          if (m[i][j] && ff.block_of[j] < t) acc = acc + NFElem(static_cast<long>(m[i][j])) * v[j];
        if (!is_zero(acc)) rhs_zero = false;
        rhs.push_back(acc);
      }
      if (at_theta[t]) {
        if (!rhs_zero) ok = false;
        continue;
      }
      NFMatrix a2;
      for (std::size_t i = 0; i < bt.size(); ++i) {
        std::vector<NFElem> row;
        for (std::size_t j = 0; j < bt.size(); ++j) {
          NFElem e(-static_cast<long>(m[bt[i]][bt[j]]));
          row.push_back(i == j ? e + theta : e);
        }
        a2.push_back(std::move(row));
      }
      auto x = solve(std::move(a2), rhs);
      if (!x) fail(ErrorKind::Internal, "singular block system below the spectral radius");
      for (std::size_t i = 0; i < bt.size(); ++i) v[bt[i]] = (*x)[i];
    }
    if (!ok) continue;
    for (const auto& x : v)
      if (nf_sign(x) < 0) fail(ErrorKind::Internal, "negative entry in assembled Perron vector");
    normalize(v);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<NFElem>> nonneg_eigenvector(const ExpMatrix& m, const NFElem& theta) {
  auto vs = nonneg_eigenvectors(m, theta);
  if (vs.empty()) return std::nullopt;
  return vs.front();
}

MaxEigenData maximal_eigenvalue(const Endomorphism& f, const MatrixBudget& budget) {
  SupportFamily s = prune_dominated(support_family(f));
  std::size_t n = s.size();
  MaxEigenData d;
  std::vector<std::size_t> idx(n, 0);
  ExpMatrix cur(n);
  double best_d = -1;
  bool have = false;
  std::map<std::vector<mpz_class>, RealAlgebraic> cache;
  auto exact = [&](const ExpMatrix& m) {
    IntPolynomial cp = char_poly(to_int_matrix(m));
    auto it = cache.find(cp);
    if (it != cache.end()) return it->second;
    auto r = largest_real_root(cp);
    if (!r) fail(ErrorKind::Internal, "no real eigenvalue for a non-negative matrix");
    cache.emplace(cp, *r);
    return *r;
  };
  while (true) {
    for (std::size_t i = 0; i < n; ++i) cur[i] = s[i][idx[i]];
    if (++d.matrices_examined > budget.max_matrices) {
      throw ResourceError("contained-matrix budget of " + std::to_string(budget.max_matrices) + " exceeded",
                          have ? "maximal eigenvalue >= " + d.theta.decimal(12) : "no matrix examined");
    }
    double rd = double_radius(cur);
    if (!have || rd >= best_d - 1e-7 * (1 + best_d)) {
      RealAlgebraic r = exact(cur);
      int c = have ? compare(r, d.theta) : 1;
      if (c > 0) {
        d.theta = r;
        d.witness = cur;
        d.maximizers = {cur};
        best_d = r.to_double();
        have = true;
      } else if (c == 0 && d.maximizers.size() < budget.max_candidates) {
        d.maximizers.push_back(cur);
      }
    }
    // odometer, last row fastest, so matrices arrive in lexicographic order
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < s[k].size()) break;
      idx[k] = 0;
      if (k == 0) {
        k = n + 1;
        break;
      }
    }
    if (k == n + 1 || n == 0) break;
  }
  d.theta_nf = algebraic_to_nf(d.theta);
  return d;
}

bool verify_maximal_eigenvector(const Endomorphism& f, const std::vector<NFElem>& mu, const NFElem& theta) {
  if (mu.size() != f.arity()) return false;
  bool nonzero = false;
  for (const auto& x : mu) {
    int sg = nf_sign(x);
    if (sg < 0) return false;
    if (sg > 0) nonzero = true;
  }
  if (!nonzero) return false;
  for (std::size_t l = 0; l < f.arity(); ++l) {
    if (f[l].is_zero()) return false;
    NFElem target = theta * mu[l];
    bool hit = false;
    for (const auto& t : f[l].terms()) {
      int c = nf_compare(dot(t.mono, mu), target);
      if (c > 0) return false;
      if (c == 0) hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

bool verify_maximal_eigenvector(const Endomorphism& f, const WeightVector& mu, const NFElem& theta) {
  return verify_maximal_eigenvector(f, mu.entries(), theta);
}

MaxEigenData maximal_eigenvector(const Endomorphism& f, const MatrixBudget& budget) {
  MaxEigenData d = maximal_eigenvalue(f, budget);
  std::vector<std::vector<NFElem>> found;
  const std::size_t keep = 6;
  for (const auto& m : d.maximizers) {
    for (auto& v : nonneg_eigenvectors(m, d.theta_nf)) {
      if (!verify_maximal_eigenvector(f, v, d.theta_nf)) continue;
      if (std::none_of(found.begin(), found.end(), [&](const auto& w) { return same_vector(v, w); }))
        found.push_back(std::move(v));
      if (found.size() >= keep) break;
    }
    if (found.size() >= keep) break;
  }
  d.eigenvector_source = "candidate";
  if (found.empty()) {
    // Policy improvement: swap in rows that beat the current vector until it satisfies every row.
    SupportFamily s = support_family(f);
    ExpMatrix m = d.witness;
    std::vector<ExpMatrix> seen;
    for (int iter = 0; iter < 64 && found.empty(); ++iter) {
      seen.push_back(m);
      auto v = nonneg_eigenvector(m, d.theta_nf);
      if (!v) break;
      bool improved = false;
      for (std::size_t l = 0; l < s.size(); ++l) {
        NFElem target = d.theta_nf * (*v)[l];
        const Monomial* best = nullptr;
        NFElem best_val = target;
        for (const auto& r : s[l]) {
          NFElem val = dot(r, *v);
          if (nf_compare(val, best_val) > 0) {
            best_val = val;
            best = &r;
          }
        }
        if (best) {
          m[l] = *best;
          improved = true;
        }
      }
      if (!improved) {
        if (verify_maximal_eigenvector(f, *v, d.theta_nf)) found.push_back(*v);
        break;
      }
      if (compare(spectral_radius(m), d.theta) != 0) break;
      if (std::find(seen.begin(), seen.end(), m) != seen.end()) break;
    }
    d.eigenvector_source = "policy-improvement";
  }
  if (found.empty())
    fail(ErrorKind::Internal, "no maximal eigenvector found among " + std::to_string(d.maximizers.size()) +
                                  " maximizing matrices (theta = " + d.theta.decimal(12) + ")");
  d.mu = WeightVector(found.front());
  for (std::size_t i = 1; i < found.size(); ++i) d.alternatives.emplace_back(found[i]);
  return d;
}

}  // namespace ddeg
