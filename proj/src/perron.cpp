#include "ddeg/perron.hpp"

#include <algorithm>
#include <functional>

#include "ddeg/errors.hpp"

namespace ddeg {

namespace {

IntPolynomial trimmed(IntPolynomial p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

mpz_class eval(const IntPolynomial& p, const mpz_class& x) {
  mpz_class v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// divide a monic integer polynomial by (x - k)
IntPolynomial deflate(const IntPolynomial& p, const mpz_class& k) {
  std::size_t d = p.size() - 1;
  IntPolynomial q(d);
  mpz_class carry = 0;
  for (std::size_t i = d; i-- > 0;) {
    carry = p[i + 1] + carry * k;
    q[i] = carry;
  }
  return q;
}

Exponent to_exponent(const mpz_class& v) {
  if (v < 0 || v > (1 << 20)) fail(ErrorKind::Domain, "exponent out of range: " + v.get_str());
  return static_cast<Exponent>(v.get_ui());
}

Polynomial mono(std::size_t n, std::vector<Exponent> e) { return Polynomial::monomial(n, std::move(e)); }
Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

// x^2 - a x - b for a quadratic reduced polynomial
void quadratic_ab(const IntPolynomial& p, mpz_class& a, mpz_class& b) {
  a = -p[1];
  b = -p[0];
}

IntMatrix companion(const IntPolynomial& monic) {
  std::size_t k = monic.size() - 1;
  IntMatrix c(k, std::vector<mpz_class>(k, mpz_class(0)));
  for (std::size_t j = 0; j < k; ++j) c[0][j] = -monic[k - 1 - j];
  for (std::size_t i = 1; i < k; ++i) c[i][i - 1] = 1;
  return c;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size();
  IntMatrix c(n, std::vector<mpz_class>(n, mpz_class(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

AlgebraicCandidate make_candidate(const IntPolynomial& p0, const std::string& selector) {
  IntPolynomial p = trimmed(p0);
  if (p.size() < 2) fail(ErrorKind::Domain, "polynomial must have degree at least 1");
  if (p.back() == -1)
    for (auto& c : p) c = -c;
  if (p.back() != 1) fail(ErrorKind::Domain, "polynomial is not monic, so its roots need not be algebraic integers");
  auto roots = isolate_real_roots(p);
  if (roots.empty()) fail(ErrorKind::Domain, "polynomial has no real root");
  std::size_t idx = roots.size() - 1;
  if (selector != "largest") {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(selector, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != selector.size() || selector.empty()) fail(ErrorKind::Domain, "root selector must be 'largest' or an index");
    if (v >= roots.size()) fail(ErrorKind::Domain, "root index out of range (" + std::to_string(roots.size()) + " real roots)");
    idx = v;
  }
  AlgebraicCandidate c;
  c.given = p;
  c.lambda = roots[idx];
  if (compare(c.lambda, mpq_class(1)) < 0) fail(ErrorKind::Domain, "selected root is below 1");
  if (auto q = c.lambda.rational_value()) {
    c.reduced = {mpz_class(-q->get_num()), mpz_class(1)};
    return c;
  }
  IntPolynomial r = to_int_primitive(squarefree_part(to_qpoly(p)));
  for (const auto& root : isolate_real_roots(r)) {
    if (compare(root, c.lambda) == 0) continue;
    RealAlgebraic w = root.refined(mpq_class(1, 2));
    mpz_class lo = w.lo().get_num() / w.lo().get_den() - 1;
    for (mpz_class k = lo; k <= lo + 2; ++k)
      if (eval(r, k) == 0) {
        r = deflate(r, k);
        break;
      }
  }
  c.reduced = r;
  return c;
}

ModulusVerdict is_weak_perron(const AlgebraicCandidate& c, unsigned bits) {
  return conjugates_within_modulus(c.reduced, c.lambda, false, bits);
}

ModulusVerdict is_perron(const AlgebraicCandidate& c, unsigned bits) {
  return conjugates_within_modulus(c.reduced, c.lambda, true, bits);
}

const char* handelman_name(HandelmanResult::Kind k) {
  switch (k) {
    case HandelmanResult::Kind::Yes:
      return "yes";
    case HandelmanResult::Kind::No:
      return "no";
    default:
      return "unknown";
  }
}

HandelmanResult is_handelman(const AlgebraicCandidate& c, int cap) {
  const IntPolynomial& p = c.reduced;
  int d = static_cast<int>(p.size()) - 1;
  HandelmanResult out;
  out.degree_cap = cap > 0 ? cap : 2 * d + 4;
  if (d == 1) {
    out.kind = HandelmanResult::Kind::Yes;
    out.certificate = p;
    out.reason = "integer";
    return out;
  }
  for (const auto& r : isolate_real_roots(p))
    if (compare(r, mpq_class(0)) > 0 && compare(r, c.lambda) != 0) {
      out.kind = HandelmanResult::Kind::No;
      out.reason = "another conjugate is a positive real number (" + r.decimal(12) + ")";
      return out;
    }
  if (d == 2) {
    mpz_class a, b;
    quadratic_ab(p, a, b);
    if (a >= 0 && b >= 0) {
      out.kind = HandelmanResult::Kind::Yes;
      out.certificate = p;
      out.reason = "quadratic x^2 - a x - b with a, b >= 0";
    } else {
      out.kind = HandelmanResult::Kind::No;
      out.reason = "quadratic x^2 - a x - b with a < 0 or b < 0";
    }
    return out;
  }
  // Multiples q * p with q monic, small integer coefficients, searched from the top
  // coefficient down so that each product coefficient is fixed as soon as possible.
  const long B = 3;
  for (int k = 0; d + k <= out.degree_cap; ++k) {
    std::vector<mpz_class> q(k + 1, mpz_class(0));
    q[k] = 1;
    auto prod_coeff = [&](int j) {
      mpz_class s = 0;
      for (int i = std::max(0, j - d); i <= std::min(k, j); ++i) s += q[i] * p[j - i];
      return s;
    };
    std::function<bool(int)> rec = [&](int idx) -> bool {
      if (idx < 0) {
        bool nonzero = false;
        for (int j = 0; j < d; ++j) {
          mpz_class v = prod_coeff(j);
          if (v > 0) return false;
          nonzero = nonzero || v != 0;
        }
        for (int j = d; j < d + k; ++j) nonzero = nonzero || prod_coeff(j) != 0;
        return nonzero;
      }
      for (long v = -B; v <= B; ++v) {
        q[idx] = v;
        if (prod_coeff(d + idx) <= 0 && rec(idx - 1)) return true;
      }
      q[idx] = 0;
      return false;
    };
    if (rec(k - 1)) {
      out.kind = HandelmanResult::Kind::Yes;
      out.certificate.resize(d + k + 1);
      for (int j = 0; j <= d + k; ++j) out.certificate[j] = prod_coeff(j);
      out.reason = k == 0 ? "polynomial already has certificate shape" : "multiple of degree " + std::to_string(d + k);
      return out;
    }
  }
  out.kind = HandelmanResult::Kind::Unknown;
  out.reason = "no certificate-shaped multiple with small cofactor up to degree " + std::to_string(out.degree_cap);
  return out;
}

bool is_irreducible_matrix(const IntMatrix& a) {
  std::size_t n = a.size();
  if (n == 0) return false;
  if (n == 1) return a[0][0] != 0;
  auto reach_all = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        const mpz_class& e = transpose ? a[j][i] : a[i][j];
        if (e != 0 && !seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach_all(false) && reach_all(true);
}

void verify_plan(RealizationPlan& plan, const EngineConfig& cfg) {
  DynamicalDegreeResult r = dynamical_degree(plan.automorphism, cfg);
  if (r.exact) {
    bool eq = compare(*r.value, plan.predicted) == 0;
    plan.verified = eq && r.oracle_consistent.value_or(true);
    plan.verification = std::string(eq ? "driver value equals the prediction" : "driver value differs: " + r.value->decimal(20)) +
                        " (" + r.basis + ")";
    if (r.oracle_consistent) plan.verification += *r.oracle_consistent ? "; oracle agrees" : "; oracle disagrees";
  } else {
    plan.verified = false;
    plan.verification = "driver returned only a bracket [" + r.lower.decimal(12) + ", " + r.upper.decimal(12) + "]";
  }
}

RealizationPlan realize_weak_perron(const AlgebraicCandidate& c, const std::optional<IntMatrix>& matrix, int hcap) {
  ModulusVerdict wp = is_weak_perron(c);
  if (wp.verdict == Tri::No) fail(ErrorKind::Domain, "not a weak Perron number: " + wp.detail);
  if (wp.verdict == Tri::Inconclusive) fail(ErrorKind::Domain, "weak Perron test inconclusive: " + wp.detail);
  RealizationPlan plan;
  plan.predicted = c.lambda;
  const IntPolynomial& p = c.reduced;
  std::size_t d = p.size() - 1;
  if (compare(c.lambda, mpq_class(1)) == 0) {
    plan.dimension = 1;
    plan.automorphism = Endomorphism::identity(1);
    plan.tag = "A1-identity";
    return plan;
  }
  if (d == 1) {
    plan.dimension = 2;
    Exponent k = to_exponent(-p[0]);
    plan.automorphism = Endomorphism({mono(2, {k, 0}) + var(2, 1), var(2, 0)});
    plan.tag = "A2-integer";
    return plan;
  }
  if (d == 2) {
    mpz_class a, b;
    quadratic_ab(p, a, b);
    if (b > 0) {
      plan.dimension = 3;
      plan.automorphism = Endomorphism({var(3, 2) + mono(3, {to_exponent(a), to_exponent(b), 0}), var(3, 0), var(3, 1)});
      plan.tag = "A3-shiftlike";
      return plan;
    }
    mpz_class alpha = a / 2;
    mpz_class e = alpha * (a - alpha) + b;
    plan.dimension = 4;
    plan.automorphism = Endomorphism({var(4, 2) + mono(4, {to_exponent(alpha), 1, 0, 0}),
                                      var(4, 3) + mono(4, {to_exponent(e), to_exponent(a - alpha), 0, 0}), var(4, 0),
                                      var(4, 1)});
    plan.tag = "A4-quadratic";
    return plan;
  }
  IntMatrix A;
  if (matrix) {
    A = *matrix;
    for (const auto& row : A) {
      if (row.size() != A.size()) fail(ErrorKind::Domain, "matrix witness is not square");
      for (const auto& x : row)
        if (x < 0) fail(ErrorKind::Domain, "matrix witness has a negative entry");
    }
    if (!is_irreducible_matrix(A)) fail(ErrorKind::Domain, "matrix witness is not irreducible");
    auto rho = largest_real_root(char_poly(A));
    if (!rho || compare(*rho, c.lambda) != 0) fail(ErrorKind::Domain, "spectral radius of the matrix witness is not lambda");
    plan.notes.push_back("matrix witness supplied");
  } else {
    HandelmanResult h = is_handelman(c, hcap);
    if (h.kind != HandelmanResult::Kind::Yes)
      fail(ErrorKind::Domain,
           "general case needs a non-negative irreducible integer matrix with spectral radius lambda; none was supplied "
           "and no Handelman certificate was found (" + h.reason + ")");
    if (h.certificate[0] == 0)
      fail(ErrorKind::Domain, "companion matrix of the certificate " + int_poly_str(h.certificate) +
                                  " is reducible (constant term 0); supply a matrix witness");
    A = companion(h.certificate);
    if (!is_irreducible_matrix(A)) fail(ErrorKind::Internal, "companion matrix is unexpectedly reducible");
    plan.notes.push_back("companion matrix of the certificate " + int_poly_str(h.certificate));
  }
  std::size_t k = A.size();
  std::vector<Polynomial> comps;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Exponent> e(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i) e[i] = to_exponent(A[j][i]);
    comps.push_back(var(2 * k, k + j) + mono(2 * k, e));
  }
  for (std::size_t j = 0; j < k; ++j) comps.push_back(var(2 * k, j));
  plan.dimension = 2 * k;
  plan.automorphism = Endomorphism(std::move(comps));
  plan.tag = "A2n-doubling";
  return plan;
}

int minimal_dimension_quadratic(const AlgebraicCandidate& c) {
  if (c.reduced.size() != 3) fail(ErrorKind::Domain, "not a quadratic integer");
  mpz_class a, b;
  quadratic_ab(c.reduced, a, b);
  if (b == 0) fail(ErrorKind::Domain, "degenerate quadratic: zero conjugate");
  if (is_weak_perron(c).verdict != Tri::Yes) fail(ErrorKind::Domain, "not a weak Perron number");
  return b > 0 ? 3 : 4;
}

RealizationPlan examplerst_family(long r, long s, long t) {
  if (r < 1 || s < 1 || t < 1) fail(ErrorKind::Domain, "r, s, t must be at least 1");
  auto ue = [](long v) { return static_cast<Exponent>(v); };
  Polynomial inner = var(3, 1) + mono(3, {ue(r), 0, ue(t)});
  Polynomial third = var(3, 0) + mono(3, {0, 0, ue(s)}) * inner;
  RealizationPlan plan;
  plan.dimension = 3;
  plan.automorphism = Endomorphism({inner, var(3, 2), third});
  plan.tag = "examplerst";
  IntPolynomial q{mpz_class(r * s), mpz_class(-(r + s + t)), mpz_class(1)};
  plan.predicted = *largest_real_root(q);
  if (!plan.predicted.rational_value())
    plan.notes.push_back("not conjugate to an affine-triangular automorphism of A^3: lambda has a positive conjugate");
  return plan;
}

std::optional<int> lind_power_perron(const AlgebraicCandidate& c, int max_m, unsigned bits) {
  IntMatrix C = companion(c.reduced);
  IntMatrix P = C;
  for (int m = 1; m <= max_m; ++m) {
    if (m > 1) P = mat_mul(P, C);
    IntPolynomial cp = to_int_primitive(squarefree_part(to_qpoly(char_poly(P))));
    auto lm = largest_real_root(cp);
    if (lm && conjugates_within_modulus(cp, *lm, true, bits).verdict == Tri::Yes) return m;
  }
  return std::nullopt;
}

ClassificationReport classify_number(const AlgebraicCandidate& c, unsigned bits, int hcap) {
  ClassificationReport rep;
  rep.candidate = c;
  rep.weak_perron = is_weak_perron(c, bits);
  rep.perron = is_perron(c, bits);
  rep.handelman = is_handelman(c, hcap);
  std::size_t d = c.reduced.size() - 1;
  bool wp = rep.weak_perron.verdict == Tri::Yes;
  if (compare(c.lambda, mpq_class(1)) == 0) {
    rep.minimal_dimension = 1;
  } else if (d == 1) {
    rep.minimal_dimension = 2;
  } else if (d == 2 && wp) {
    rep.minimal_dimension = minimal_dimension_quadratic(c);
  } else {
    rep.notes.push_back("minimal dimension is only determined for integers and quadratic integers");
  }
  if (wp) {
    try {
      rep.realization = realize_weak_perron(c, std::nullopt, hcap);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Domain) throw;
      rep.notes.push_back(std::string("no realization: ") + e.what());
    }
  }
  if (d == 2 && wp && rep.minimal_dimension == 4) {
    // x^2 - a x + b' with b' = rs and a > r + s is covered by the (r, s, t) family in A^3
    mpz_class a, b;
    quadratic_ab(c.reduced, a, b);
    mpz_class bp = -b;
    bool found = false;
    for (mpz_class r = 1; r * r <= bp && !found; ++r) {
      if (bp % r != 0) continue;
      mpz_class s = bp / r;
      if (a > r + s) {
        mpz_class t = a - r - s;
        rep.notes.push_back("also the dynamical degree of an automorphism of A^3 that is not affine-triangular: (r,s,t) = (" +
                            r.get_str() + "," + s.get_str() + "," + t.get_str() + ")");
        found = true;
      }
    }
    if (!found)
      rep.notes.push_back(
          "open: no automorphism of A^3 with this dynamical degree is known, and none can be affine-triangular; "
          "the construction here needs A^4");
  }
  return rep;
}

}  // namespace ddeg
