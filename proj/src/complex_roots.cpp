// Certified modulus comparison of the complex roots of an integer polynomial
// against one of its real roots.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "ddeg/algebraic.hpp"
#include "ddeg/errors.hpp"

namespace ddeg {

namespace {

struct CF {
  mpf_class re, im;
};

struct CQ {
  mpq_class re, im;
};

CQ cq_mul(const CQ& a, const CQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
mpq_class cq_norm2(const CQ& a) { return a.re * a.re + a.im * a.im; }

CF cf_mul(const CF& a, const CF& b, unsigned prec) {
  CF r{mpf_class(0, prec), mpf_class(0, prec)};
  r.re = a.re * b.re - a.im * b.im;
  r.im = a.re * b.im + a.im * b.re;
  return r;
}

CF cf_div(const CF& a, const CF& b, unsigned prec) {
  mpf_class d(b.re * b.re + b.im * b.im, prec);
  CF r{mpf_class(0, prec), mpf_class(0, prec)};
  r.re = (a.re * b.re + a.im * b.im) / d;
  r.im = (a.im * b.re - a.re * b.im) / d;
  return r;
}

// Aberth-Ehrlich simultaneous refinement at the given precision.
void aberth(const QPoly& p, std::vector<CF>& z, unsigned prec) {
  std::size_t n = z.size();
  std::vector<mpf_class> c, dc;
  for (const auto& v : p.coeffs()) c.emplace_back(v, prec);
  QPoly d = p.derivative();
  for (const auto& v : d.coeffs()) dc.emplace_back(v, prec);
  mpf_class tol(1, prec);
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec - 8);
  for (int iter = 0; iter < 400; ++iter) {
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) {
      CF pv{mpf_class(0, prec), mpf_class(0, prec)}, dv{mpf_class(0, prec), mpf_class(0, prec)};
      for (auto it = c.rbegin(); it != c.rend(); ++it) {
        pv = cf_mul(pv, z[i], prec);
        pv.re += *it;
      }
      for (auto it = dc.rbegin(); it != dc.rend(); ++it) {
        dv = cf_mul(dv, z[i], prec);
        dv.re += *it;
      }
      if (pv.re == 0 && pv.im == 0) continue;
      if (dv.re == 0 && dv.im == 0) {
        dv.re = tol;
      }
      CF w = cf_div(pv, dv, prec);
      CF s{mpf_class(0, prec), mpf_class(0, prec)};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        CF diff{z[i].re - z[j].re, z[i].im - z[j].im};
        if (diff.re == 0 && diff.im == 0) diff.re = tol;
        CF one{mpf_class(1, prec), mpf_class(0, prec)};
        CF inv = cf_div(one, diff, prec);
        s.re += inv.re;
        s.im += inv.im;
      }
      CF ws = cf_mul(w, s, prec);
      CF den{mpf_class(1, prec) - ws.re, -ws.im};
      CF corr = cf_div(w, den, prec);
      z[i].re -= corr.re;
      z[i].im -= corr.im;
      mpf_class mag = abs(corr.re) + abs(corr.im);
      mpf_class scale = abs(z[i].re) + abs(z[i].im) + 1;
      if (mag > tol * scale) done = false;
    }
    if (done) break;
  }
}

std::vector<CF> initial_roots(const QPoly& p, unsigned prec) {
  std::size_t n = static_cast<std::size_t>(p.degree());
  std::vector<CF> z;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  bool finite = true;
  for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = -mpq_class(p.coeff(i) / p.lead()).get_d();
    if (!std::isfinite(v)) finite = false;
    comp(i, n - 1) = v;
  }
  if (finite) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    auto ev = es.eigenvalues();
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> c = ev(static_cast<Eigen::Index>(i));
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        finite = false;
        break;
      }
      // tiny asymmetric nudge keeps coincident starting points apart
      z.push_back({mpf_class(c.real() + 1e-13 * static_cast<double>(i + 1), prec),
                   mpf_class(c.imag() + 1.7e-13 * static_cast<double>(i + 1), prec)});
    }
  }
  if (!finite) {
    z.clear();
    double r = cauchy_bound(p).get_d() / 2;
    for (std::size_t i = 0; i < n; ++i) {
      double a = 2 * M_PI * (static_cast<double>(i) + 0.25) / static_cast<double>(n);
      z.push_back({mpf_class(r * std::cos(a), prec), mpf_class(r * std::sin(a), prec)});
    }
  }
  return z;
}

CQ eval_exact(const QPoly& p, const CQ& z) {
  CQ acc{0, 0};
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc = cq_mul(acc, z);
    acc.re += *it;
  }
  return acc;
}

// Best rational approximation k/q of x with q <= qmax, returns q or 0.
long small_denominator(double x, long qmax, double tol) {
  for (long q = 1; q <= qmax; ++q) {
    double k = std::round(x * static_cast<double>(q));
    if (std::fabs(x * static_cast<double>(q) - k) < tol * static_cast<double>(q)) return q;
  }
  return 0;
}

NFElem eval_nf(const QPoly& p, const NFElem& y) {
  NFElem acc(0);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * y + NFElem(*it);
  return acc;
}

// Number of roots z of p (squarefree) with z^m == lambda^m.
int count_power_coincidences(const QPoly& p, const RealAlgebraic& lambda, long m) {
  std::size_t n = static_cast<std::size_t>(p.degree());
  QMatrix c(n, std::vector<mpq_class>(n, mpq_class(0)));
  for (std::size_t i = 1; i < n; ++i) c[i][i - 1] = 1;
  for (std::size_t i = 0; i < n; ++i) c[i][n - 1] = -p.coeff(i) / p.lead();
  QMatrix cm = c;
  for (long k = 1; k < m; ++k) {
    QMatrix nx(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (sgn(cm[i][l]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) nx[i][j] += cm[i][l] * c[l][j];
      }
    cm = std::move(nx);
  }
  QPoly chi = char_poly_q(cm);
  Field f = make_field(lambda);
  NFElem y = NFElem::generator(f).pow(static_cast<unsigned>(m));
  int mult = 0;
  while (!chi.is_zero() && nf_sign(eval_nf(chi, y)) == 0) {
    ++mult;
    chi = chi.derivative();
  }
  return mult;
}

}  // namespace

ModulusVerdict conjugates_within_modulus(const IntPolynomial& pin, const RealAlgebraic& lambda, bool strict,
                                         unsigned cap) {
  ModulusVerdict out;
  QPoly p = squarefree_part(to_qpoly(pin));
  {
    QPoly g = gcd(p, lambda.defining_q());
    if (g.degree() < 1 || count_roots(sturm_sequence(g), lambda.lo(), lambda.hi()) == 0)
      fail(ErrorKind::Domain, "selected number is not a root of the polynomial");
  }
  auto reals = isolate_real_roots(p);
  bool real_tie = false;
  bool neg_lambda_root = false;
  for (const auto& r : reals) {
    if (compare(r, lambda) == 0) continue;
    int c = compare(r, mpq_class(0)) >= 0 ? compare(r, lambda) : compare(r.negate(), lambda);
    if (c > 0) {
      out.verdict = Tri::No;
      out.detail = "real root of larger modulus: " + r.decimal(12);
      return out;
    }
    if (c == 0) {
      real_tie = true;
      neg_lambda_root = true;
    }
  }
  if (real_tie && strict) {
    out.verdict = Tri::No;
    out.detail = "real root -lambda has equal modulus";
    return out;
  }
  std::size_t n = static_cast<std::size_t>(p.degree());
  std::size_t nonreal = n - reals.size();
  if (nonreal == 0) {
    out.verdict = Tri::Yes;
    out.detail = real_tie ? "all roots real; -lambda ties" : "all roots real";
    return out;
  }

  QPoly pm = p.monic();
  unsigned prec = 64;
  std::vector<CF> z = initial_roots(pm, prec);
  for (; prec <= cap; prec *= 2) {
    out.bits_used = prec;
    for (auto& v : z) {
      v.re.set_prec(prec);
      v.im.set_prec(prec);
    }
    aberth(pm, z, prec + 32);
    std::vector<CQ> zq;
    for (const auto& v : z) zq.push_back({mpq_class(v.re), mpq_class(v.im)});
    // squared inclusion radii n^2 |p(z_i)|^2 / prod |z_i - z_j|^2
    std::vector<mpq_class> r2(n);
    bool degenerate = false;
    for (std::size_t i = 0; i < n && !degenerate; ++i) {
      mpq_class prod = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        mpq_class d = cq_norm2({zq[i].re - zq[j].re, zq[i].im - zq[j].im});
        if (sgn(d) == 0) degenerate = true;
        prod *= d;
      }
      if (degenerate) break;
      r2[i] = mpq_class(static_cast<unsigned long>(n * n)) * cq_norm2(eval_exact(pm, zq[i])) / prod;
    }
    if (degenerate) continue;
    std::vector<mpq_class> rup(n);
    for (std::size_t i = 0; i < n; ++i) rup[i] = sqrt_upper(r2[i], prec + 16);
    bool disjoint = true;
    for (std::size_t i = 0; i < n && disjoint; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        mpq_class s = rup[i] + rup[j];
        if (s * s >= cq_norm2({zq[i].re - zq[j].re, zq[i].im - zq[j].im})) {
          disjoint = false;
          break;
        }
      }
    if (!disjoint) continue;
    std::vector<std::size_t> nr;
    for (std::size_t i = 0; i < n; ++i)
      if (zq[i].im * zq[i].im > r2[i]) nr.push_back(i);
    if (nr.size() != nonreal) continue;

    RealAlgebraic lam = lambda.refined(mpq_class(1, mpz_class(1) << (prec + 8)));
    std::vector<std::size_t> straddle;
    bool above = false;
    for (std::size_t i : nr) {
      mpq_class m2 = cq_norm2(zq[i]);
      mpq_class mhi = sqrt_upper(m2, prec + 16) + rup[i];
      mpq_class mlo = sqrt_lower(m2, prec + 16) - rup[i];
      if (mhi < lam.lo()) continue;
      if (mlo > lam.hi()) {
        above = true;
        break;
      }
      straddle.push_back(i);
    }
    if (above) {
      out.verdict = Tri::No;
      out.detail = "complex root of larger modulus";
      return out;
    }
    if (straddle.empty()) {
      out.verdict = Tri::Yes;
      out.detail = real_tie ? "-lambda ties; complex roots strictly inside" : "complex roots strictly inside";
      return out;
    }
    // candidate ties lambda * root of unity: verify exactly via the power map
    long m = 1;
    bool have = true;
    for (std::size_t i : straddle) {
      double ang = std::atan2(z[i].im.get_d(), z[i].re.get_d()) / (2 * M_PI);
      long q = small_denominator(ang, 64, 1e-9);
      if (q == 0) {
        have = false;
        break;
      }
      m = std::lcm(m, q);
    }
    if (have && m <= 720) {
      int expect = 1 + ((neg_lambda_root && m % 2 == 0) ? 1 : 0) + static_cast<int>(straddle.size());
      if (count_power_coincidences(p, lambda, m) == expect) {
        if (strict) {
          out.verdict = Tri::No;
          out.detail = "complex conjugate of equal modulus (lambda times a root of unity of order dividing " +
                       std::to_string(m) + ")";
        } else {
          out.verdict = Tri::Yes;
          out.detail = "ties on |z| = lambda are lambda times roots of unity of order dividing " + std::to_string(m);
        }
        return out;
      }
    }
  }
  out.verdict = Tri::Inconclusive;
  out.detail = "precision cap of " + std::to_string(cap) + " bits reached";
  return out;
}

}  // namespace ddeg
