// Degree sequences of iterates and a growth-rate estimate for them.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "ddeg/errors.hpp"
#include "ddeg/stability.hpp"
#include "modp.hpp"

namespace ddeg {

namespace {

constexpr Degree kDegreeCap = Degree(1) << 60;

// Combinatorial bound on deg of (f^r)_i: ub_r[i] = max over monomials of f_i of sum_j e_j ub_{r-1}[j].
std::vector<Degree> next_upper_bound(const Endomorphism& f, const std::vector<Degree>& prev, bool& overflow) {
  std::vector<Degree> ub(f.arity(), kNegInfDegree);
  for (std::size_t i = 0; i < f.arity(); ++i) {
    for (const auto& t : f[i].terms()) {
      __int128 s = 0;
      for (std::size_t j = 0; j < t.mono.size(); ++j)
        if (t.mono[j] && prev[j] > 0) s += static_cast<__int128>(t.mono[j]) * prev[j];
      if (s > kDegreeCap) {
        overflow = true;
        s = kDegreeCap;
      }
      ub[i] = std::max<Degree>(ub[i], static_cast<Degree>(s));
    }
  }
  return ub;
}

Degree max_of(const std::vector<Degree>& v) {
  Degree m = kNegInfDegree;
  for (auto x : v) m = std::max(m, x);
  return m;
}

OracleRow make_row(unsigned r, Degree d, bool certified) {
  OracleRow row;
  row.r = r;
  row.degree = d;
  row.certified = certified;
  row.root = d > 0 ? std::pow(static_cast<double>(d), 1.0 / r) : 0.0;
  return row;
}

// Berlekamp-Massey over Q. Returns the connection polynomial c_0 = 1, c_1..c_L.
std::vector<mpq_class> berlekamp_massey(const std::vector<mpq_class>& s) {
  std::vector<mpq_class> c{1}, b{1};
  std::size_t L = 0, m = 1;
  mpq_class bd = 1;
  for (std::size_t k = 0; k < s.size(); ++k) {
    mpq_class d = s[k];
    for (std::size_t i = 1; i <= L && i < c.size(); ++i) d += c[i] * s[k - i];
    if (d == 0) {
      ++m;
      continue;
    }
    std::vector<mpq_class> t = c;
    mpq_class coef = d / bd;
    if (c.size() < b.size() + m) c.resize(b.size() + m, mpq_class(0));
    for (std::size_t i = 0; i < b.size(); ++i) c[i + m] -= coef * b[i];
    if (2 * L <= k) {
      L = k + 1 - L;
      b = t;
      bd = d;
      m = 1;
    } else {
      ++m;
    }
  }
  c.resize(L + 1, mpq_class(0));
  return c;
}

double max_root_modulus(const std::vector<mpq_class>& conn) {
  // x^L + c_1 x^{L-1} + ... + c_L
  std::size_t L = conn.size() - 1;
  if (L == 0) return 0;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(L, L);
  for (std::size_t j = 0; j < L; ++j) comp(0, j) = -conn[j + 1].get_d();
  for (std::size_t i = 1; i < L; ++i) comp(i, i - 1) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  double r = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r = std::max(r, std::abs(es.eigenvalues()[i]));
  return r;
}

}  // namespace

void estimate_growth(OracleReport& rep) {
  rep.estimate.reset();
  rep.estimator = "none";
  std::size_t R = rep.rows.size();
  if (R == 0) return;
  double min_root = rep.rows[0].root;
  for (const auto& row : rep.rows) min_root = std::min(min_root, row.root);
  for (std::size_t start = 0; start + 2 < R; ++start) {
    std::vector<mpq_class> s;
    for (std::size_t k = start; k < R; ++k) s.emplace_back(static_cast<long>(rep.rows[k].degree));
    auto conn = berlekamp_massey(s);
    std::size_t L = conn.size() - 1;
    if (L == 0 || 2 * L >= s.size()) continue;
    double est = max_root_modulus(conn);
    // the dynamical degree is at least 1 and at most every computed root
    if (est < 1 - 1e-9 || est > min_root * (1 + 1e-9)) continue;
    rep.estimate = est;
    rep.estimator = "recurrence";
    std::vector<mpq_class> cp(conn.rbegin(), conn.rend());
    rep.recurrence = QPoly(cp).str();
    return;
  }
  if (R >= 2 && rep.rows[R - 2].degree > 0) {
    rep.estimate = static_cast<double>(rep.rows[R - 1].degree) / static_cast<double>(rep.rows[R - 2].degree);
    rep.estimator = "ratio";
  } else {
    rep.estimate = rep.rows[R - 1].root;
    rep.estimator = "root";
  }
}

OracleReport oracle_degree_sequence(const Endomorphism& f, unsigned depth, const Budget& budget) {
  OracleReport rep;
  std::size_t n = f.arity();
  bool monomial = std::all_of(f.components().begin(), f.components().end(),
                              [](const Polynomial& p) { return p.num_terms() == 1; });
  std::vector<Degree> ub(n, 1);
  bool overflow = false;

  Budget small = budget;
  small.max_terms = std::min<std::size_t>(budget.max_terms, 2000);
  Endomorphism cur = f;
  bool exact_ok = true;

  modp::ModEndo mf(f);
  std::mt19937_64 rng(0x0AC1E5EEDULL);
  std::vector<modp::UPoly> line(n);
  for (auto& l : line) {
    l = {modp::random_element(rng), modp::random_element(rng)};
    modp::trim(l);
  }
  bool line_ok = true;
  const std::size_t cap = std::size_t(1) << 20;

  for (unsigned r = 1; r <= depth; ++r) {
    ub = next_upper_bound(f, ub, overflow);
    Degree bound = max_of(ub);
    if (monomial) {
      if (overflow) {
        rep.truncated = true;
        rep.note = "degree exceeds 2^60";
        break;
      }
      rep.rows.push_back(make_row(r, bound, true));
      continue;
    }
    if (exact_ok && r > 1) {
      try {
        cur = compose(f, cur, small);
      } catch (const ResourceError&) {
        exact_ok = false;
      }
    }
    if (line_ok) {
      try {
        line = modp::apply_upoly(mf, line, cap);
      } catch (const ResourceError&) {
        line_ok = false;
      }
    }
    if (exact_ok) {
      rep.rows.push_back(make_row(r, cur.degree(), true));
    } else if (line_ok) {
      Degree d = kNegInfDegree;
      for (const auto& l : line) d = std::max<Degree>(d, modp::degree(l));
      rep.rows.push_back(make_row(r, d, !overflow && d == bound));
    } else {
      rep.truncated = true;
      rep.note = "iterate " + std::to_string(r) + " exceeds the size caps";
      break;
    }
  }
  estimate_growth(rep);
  return rep;
}

OracleReport oracle_partial_degree_sequence(const Endomorphism& f, const std::vector<std::size_t>& vars, unsigned depth) {
  OracleReport rep;
  std::size_t n = f.arity();
  std::vector<bool> in(n, false);
  for (auto v : vars) {
    if (v >= n) fail(ErrorKind::Structural, "variable index out of range");
    in[v] = true;
  }
  std::vector<Degree> ub(n);
  for (std::size_t j = 0; j < n; ++j) ub[j] = in[j] ? 1 : 0;
  bool overflow = false;
  modp::ModEndo mf(f);
  std::mt19937_64 rng(0x9A27141EEDULL);
  std::vector<modp::UPoly> line(n);
  for (std::size_t j = 0; j < n; ++j) {
    line[j] = {modp::random_element(rng)};
    if (in[j]) line[j].push_back(modp::random_element(rng));
    modp::trim(line[j]);
  }
  const std::size_t cap = std::size_t(1) << 20;
  for (unsigned r = 1; r <= depth; ++r) {
    ub = next_upper_bound(f, ub, overflow);
    try {
      line = modp::apply_upoly(mf, line, cap);
    } catch (const ResourceError&) {
      rep.truncated = true;
      rep.note = "iterate " + std::to_string(r) + " exceeds the size caps";
      break;
    }
    Degree d = kNegInfDegree;
    for (const auto& l : line) d = std::max<Degree>(d, modp::degree(l));
    rep.rows.push_back(make_row(r, std::max<Degree>(d, 0), !overflow && d == max_of(ub)));
  }
  estimate_growth(rep);
  return rep;
}

bool oracle_agrees(const OracleReport& rep, const RealAlgebraic& value, double tolerance) {
  if (!rep.estimate) return false;
  double v = value.to_double();
  for (const auto& row : rep.rows)
    if (row.degree > 0 && v > row.root * (1 + 1e-12)) return false;
  return std::abs(*rep.estimate - v) <= tolerance;
}

SplitData dinh_nguyen_split(const Endomorphism& f, std::size_t m, unsigned depth) {
  std::size_t n = f.arity();
  if (m > n) fail(ErrorKind::Domain, "split index exceeds the dimension");
  SplitData s;
  s.m = m;
  std::vector<Polynomial> comps;
  std::vector<std::size_t> idx(n);
  for (std::size_t j = 0; j < n; ++j) idx[j] = j;
  for (std::size_t i = 0; i < m; ++i) {
    if (f[i].variable_span() > m)
      fail(ErrorKind::Domain, "component " + std::to_string(i + 1) + " depends on variables beyond x" + std::to_string(m));
    comps.push_back(f[i].remap(m, idx));
  }
  if (m) s.fhat = Endomorphism(std::move(comps));
  std::vector<std::size_t> tail;
  for (std::size_t j = m; j < n; ++j) tail.push_back(j);
  if (!tail.empty()) s.lambda2 = oracle_partial_degree_sequence(f, tail, depth);
  return s;
}

}  // namespace ddeg
