#pragma once

// Shared helpers for the test suites, including small independent reference
// implementations used as oracles against the library.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ddeg/algebraic.hpp"
#include "ddeg/polynomial.hpp"

namespace testsupport {

inline ddeg::Endomorphism E(const std::string& s) { return ddeg::parse_endomorphism(s); }
inline ddeg::Polynomial P(const std::string& s, std::size_t n = 0) { return ddeg::parse_polynomial(s, n); }
inline ddeg::IntPolynomial Z(std::initializer_list<long> lowest_first) {
  ddeg::IntPolynomial p;
  for (long c : lowest_first) p.emplace_back(c);
  return p;
}

// Largest root of x^2 - a x - k, computed in long double.
inline double quad_root(double a, double k) { return (a + std::sqrt(a * a + 4 * k)) / 2; }

// Exact identity of a quadratic surd: (a + sqrt(D))/2 as the pair (a, D), normalized so
// that perfect squares collapse to integers encoded as (2v, 0).
struct Surd {
  long a = 0, D = 0;
  bool operator<(const Surd& o) const { return a != o.a ? a < o.a : D < o.D; }
  bool operator==(const Surd& o) const { return a == o.a && D == o.D; }
};
inline Surd surd(long a, long D) {
  long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(D))));
  if (s * s == D) return {a + s, 0};
  return {a, D};
}
// Largest root of a monic integer quadratic or linear polynomial as a Surd.
inline Surd surd_of(const ddeg::IntPolynomial& p) {
  if (p.size() == 2) return {2 * mpz_class(-p[0] / p[1]).get_si(), 0};
  // x^2 + b x + c
  long b = p[1].get_si(), c = p[0].get_si();
  return surd(-b, b * b - 4 * c);
}

// ---------------------------------------------------------------------------
// Naive reference polynomials over long double coefficients with integer exponents.
using RefMono = std::vector<int>;
using RefPoly = std::map<RefMono, long double>;

inline RefPoly ref_from(const ddeg::Polynomial& p) {
  RefPoly r;
  for (const auto& t : p.terms()) r[RefMono(t.mono.begin(), t.mono.end())] = t.coeff.get_d();
  return r;
}
inline RefPoly ref_mul(const RefPoly& a, const RefPoly& b) {
  RefPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      RefMono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r[m] += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}
inline RefPoly ref_add(RefPoly a, const RefPoly& b) {
  for (const auto& [m, c] : b) a[m] += c;
  for (auto it = a.begin(); it != a.end();) it = it->second == 0 ? a.erase(it) : std::next(it);
  return a;
}
inline RefPoly ref_one(std::size_t n) { return {{RefMono(n, 0), 1.0L}}; }
// p(q_1, ..., q_n) by expanding every monomial separately.
inline RefPoly ref_subst(const RefPoly& p, const std::vector<RefPoly>& q, std::size_t n) {
  RefPoly r;
  for (const auto& [m, c] : p) {
    RefPoly term = {{RefMono(n, 0), c}};
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) term = ref_mul(term, q[i]);
    r = ref_add(r, term);
  }
  return r;
}
inline int ref_degree(const RefPoly& p) {
  int d = -1;
  for (const auto& [m, c] : p) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}
inline bool ref_equal(const RefPoly& a, const ddeg::Polynomial& b) {
  RefPoly bb = ref_from(b);
  if (a.size() != bb.size()) return false;
  for (const auto& [m, c] : a) {
    auto it = bb.find(m);
    if (it == bb.end() || std::fabs(static_cast<double>(it->second - c)) > 1e-9 * std::max(1.0L, std::fabs(c))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Numeric oracles.
inline double numeric_spectral_radius(const std::vector<std::vector<long>>& m) {
  const int n = static_cast<int>(m.size());
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = static_cast<double>(m[i][j]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  double r = 0;
  for (int i = 0; i < n; ++i) r = std::max(r, std::abs(es.eigenvalues()[i]));
  return r;
}
// Roots of an integer polynomial (lowest first) via companion eigenvalues.
inline std::vector<std::complex<double>> numeric_roots(const ddeg::IntPolynomial& p) {
  const int d = static_cast<int>(p.size()) - 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  double lead = p.back().get_d();
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -p[i].get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  std::vector<std::complex<double>> r;
  for (int i = 0; i < d; ++i) r.push_back(es.eigenvalues()[i]);
  return r;
}
inline double largest_real(const ddeg::IntPolynomial& p) {
  double best = -1e300;
  for (auto z : numeric_roots(p))
    if (std::fabs(z.imag()) < 1e-7) best = std::max(best, z.real());
  return best;
}

// Deterministic random small endomorphisms in n variables with integer coefficients.
inline ddeg::Endomorphism random_endo(std::mt19937& rng, std::size_t n, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms), coef(-2, 2), deg(0, max_deg);
  std::vector<ddeg::Polynomial> comps;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ddeg::Term> ts;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
      ddeg::Monomial m(n, 0);
      int total = deg(rng);
      for (int e = 0; e < total; ++e) m[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]++;
      int c = coef(rng);
      if (c == 0) c = 1;
      ts.push_back({m, mpq_class(c)});
    }
    ddeg::Polynomial p(n, ts);
    if (p.is_zero()) p = ddeg::Polynomial::variable(n, i);
    comps.push_back(p);
  }
  return ddeg::Endomorphism(comps);
}

}  // namespace testsupport
