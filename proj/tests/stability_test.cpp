#include <random>

#include "doctest.h"
#include "ddeg/errors.hpp"
#include "ddeg/stability.hpp"
#include "support.hpp"

using namespace ddeg;
using testsupport::E;
using testsupport::Z;

namespace {

const char* kInstable = "(x1^2 + x2, x1, x3 + (x3 + x4)^2, x4 - (x3 + x4)^2)";

std::string witness(long a, long b, long c) {
  return "(x3 + x1^" + std::to_string(a) + "*x2^" + std::to_string(b) + ", x2 + x1^" + std::to_string(c) + ", x1)";
}

}  // namespace

TEST_CASE("stability verdicts") {
  for (long a = 0; a <= 2; ++a)
    for (long b = 1; b <= 2; ++b)
      for (long c = 1; c <= 2; ++c) {
        Endomorphism f = E(witness(a, b, c));
        MaxEigenData d = maximal_eigenvector(f);
        REQUIRE(d.mu);
        StabilityReport rep = stability_test(f, *d.mu, 10);
        CHECK(rep.verdict == StabilityVerdict::StableProven);
      }

  StabilityReport u = stability_test(E(kInstable), WeightVector::from_ints({0, 0, 1, 1}), 10);
  CHECK(u.verdict == StabilityVerdict::UnstableAt);
  CHECK(u.r == 2);
  // deg_mu(f^2) = 2 < 4
  auto d2 = mu_degree_endo(iterate(E(kInstable), 2), WeightVector::from_ints({0, 0, 1, 1}));
  REQUIRE(d2.is_finite());
  CHECK(nf_equal(d2.value, NFElem(2)));

  // shift-like with the theta-power weight vector
  Endomorphism s = E("(x3 + x1*x2^2, x1, x2)");
  MaxEigenData ds = maximal_eigenvector(s);
  REQUIRE(ds.mu);
  CHECK(stability_test(s, *ds.mu, 10).verdict == StabilityVerdict::StableProven);
}

TEST_CASE("translations do not change stability") {
  std::vector<std::string> maps = {witness(1, 1, 3), witness(2, 1, 1), "(x3 + x1*x2^2, x1, x2)", "(x1^2*x2, x1*x2^3)",
                                   "(x2 + x1^2*x3, x3, x1 + x2*x3 + x1^2*x3^2)"};
  for (const auto& s : maps) {
    Endomorphism f = E(s);
    MaxEigenData d = maximal_eigenvector(f);
    REQUIRE(d.mu);
    if (!d.mu->strictly_positive() || compare(d.theta, mpq_class(1)) <= 0) continue;
    std::vector<Polynomial> shifted;
    for (std::size_t i = 0; i < f.arity(); ++i)
      shifted.push_back(f[i] + Polynomial::constant(f.arity(), mpq_class(static_cast<long>(i) + 2)));
    Endomorphism tf(shifted);
    auto a = stability_test(f, *d.mu, 8), b = stability_test(tf, *d.mu, 8);
    CHECK(a.verdict == b.verdict);
  }
}

TEST_CASE("oracle degree sequence") {
  OracleReport r = oracle_degree_sequence(E("(x3 + x1*x2, x2 + x1^3, x1)"), 8);
  REQUIRE(r.rows.size() == 8);
  // reference degrees from independent expansion for the first iterates
  Endomorphism f = E("(x3 + x1*x2, x2 + x1^3, x1)");
  std::vector<testsupport::RefPoly> cur, base;
  for (const auto& c : f.components()) base.push_back(testsupport::ref_from(c));
  cur = base;
  for (unsigned k = 1; k <= 4; ++k) {
    int deg = 0;
    for (const auto& c : cur) deg = std::max(deg, testsupport::ref_degree(c));
    CHECK(r.rows[k - 1].degree == deg);
    std::vector<testsupport::RefPoly> next;
    for (const auto& c : base) next.push_back(testsupport::ref_subst(c, cur, 3));
    cur = next;
  }
  // frozen: 3, 6, 15, 33, 78, 177, 411, 942
  std::vector<Degree> frozen = {3, 6, 15, 33, 78, 177, 411, 942};
  for (std::size_t i = 0; i < 8; ++i) CHECK(r.rows[i].degree == frozen[i]);
  REQUIRE(r.estimate);
  CHECK(*r.estimate == doctest::Approx((1 + std::sqrt(13.0)) / 2).epsilon(1e-6));

  // monomial: deg(f^r) is the largest row sum of M^r
  OracleReport m = oracle_degree_sequence(E("(x1*x2^2, x1)"), 8);
  long p00 = 1, p01 = 0, p10 = 0, p11 = 1;
  for (const auto& row : m.rows) {
    // multiply by [[1,2],[1,0]]
    long q00 = p00 + p01, q01 = 2 * p00, q10 = p10 + p11, q11 = 2 * p10;
    p00 = q00, p01 = q01, p10 = q10, p11 = q11;
    CHECK(row.degree == std::max(p00 + p01, p10 + p11));
  }
  REQUIRE(m.estimate);
  CHECK(*m.estimate == doctest::Approx(2.0).epsilon(1e-6));

  // period-three map
  OracleReport p = oracle_degree_sequence(E("(x3 - x2^2, x1, x2 + x1^2)"), 6);
  CHECK(p.rows[2].degree == 1);
  CHECK(p.rows[5].degree == 1);
  CHECK(p.rows[0].degree == p.rows[3].degree);
  CHECK(p.rows[1].degree == p.rows[4].degree);

  OracleReport id = oracle_degree_sequence(Endomorphism::identity(3), 5);
  for (const auto& row : id.rows) CHECK(row.degree == 1);
}

TEST_CASE("split") {
  SplitData s0 = dinh_nguyen_split(E("(x1*x2, x2^2)"), 0, 6);
  CHECK(s0.m == 0);
  CHECK(s0.fhat.arity() == 0);

  Endomorphism f = E(kInstable);
  SplitData s = dinh_nguyen_split(f, 2, 6);
  CHECK(s.fhat == E("(x1^2 + x2, x1)"));
  REQUIRE(s.lambda2.estimate);
  CHECK(*s.lambda2.estimate <= 2.0 + 1e-9);

  SplitData t = dinh_nguyen_split(E("(x1^2, x2 + x1^3, x3*x2 + 1)"), 1, 6);
  CHECK(t.fhat == E("(x1^2)"));
  CHECK_THROWS(dinh_nguyen_split(E("(x2, x1)"), 1, 4));
}

TEST_CASE("dynamical degree examples") {
  EngineConfig cfg;
  for (long a = 0; a <= 2; ++a)
    for (long b = 1; b <= 2; ++b)
      for (long c = 1; c <= 2; ++c) {
        // shift-like form (x3 + x1^a x2^{bc}, x1, x2)
        Endomorphism f = E("(x3 + x1^" + std::to_string(a) + "*x2^" + std::to_string(b * c) + ", x1, x2)");
        DynamicalDegreeResult r = dynamical_degree(f, cfg);
        CHECK(r.exact);
        REQUIRE(r.value);
        CHECK(*r.value == *largest_real_root(Z({-b * c, -a, 1})));
        CHECK(r.oracle_consistent == std::optional<bool>(true));
      }

  std::mt19937 rng(9);
  std::uniform_int_distribution<Exponent> e(0, 3);
  for (int k = 0; k < 6; ++k) {
    ExpMatrix m(3, Monomial(3));
    std::vector<std::vector<long>> lm(3, std::vector<long>(3));
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) lm[i][j] = m[i][j] = e(rng);
      comps.push_back(Polynomial::monomial(3, m[i]));
    }
    Endomorphism f(comps);
    if (!is_dominant(f)) continue;
    DynamicalDegreeResult r = dynamical_degree(f, cfg);
    REQUIRE(r.value);
    CHECK(r.exact);
    CHECK(*r.value == spectral_radius(m));
    CHECK(r.value->to_double() == doctest::Approx(testsupport::numeric_spectral_radius(lm)).epsilon(1e-9));
  }

  DynamicalDegreeResult r6 = dynamical_degree(E(kInstable), cfg);
  CHECK(r6.exact);
  CHECK(r6.basis == "proven");
  REQUIRE(r6.value);
  CHECK(*r6.value == RealAlgebraic::from_int(2));

  CHECK_THROWS_AS(dynamical_degree(E("(x1, x1^2)"), cfg), Error);
}

TEST_CASE("exact values are squeezed by the oracle upper bounds") {
  std::vector<std::string> maps = {witness(1, 1, 3), witness(2, 1, 2), witness(0, 2, 3), kInstable, "(x1^2*x2, x1*x2^3)",
                                   "(x2 + x1^2*x3, x3, x1 + x2*x3 + x1^2*x3^2)", "(x3 + x1*x2^2, x1, x2)"};
  for (const auto& s : maps) {
    DynamicalDegreeResult r = dynamical_degree(E(s));
    REQUIRE(r.value);
    for (const auto& row : r.oracle.rows) CHECK(r.value->to_double() <= row.root + 1e-9);
    CHECK(oracle_agrees(r.oracle, *r.value, 1e-3));
    // 1 <= lambda <= deg
    CHECK(compare(*r.value, mpq_class(1)) >= 0);
    CHECK(compare(*r.value, mpq_class(E(s).degree())) <= 0);
  }
}

TEST_CASE("instability alone never lowers the value") {
  DynamicalDegreeResult r = dynamical_degree(E(kInstable));
  MaxEigenData d = maximal_eigenvector(E(kInstable));
  REQUIRE(r.value);
  CHECK(compare(*r.value, d.theta) == 0);
  bool saw_unstable = false;
  for (const auto& st : r.certificate)
    for (const auto& [k, v] : st.data)
      if (k == "verdict" && v == verdict_name(StabilityVerdict::UnstableAt)) saw_unstable = true;
  CHECK(saw_unstable);
}
