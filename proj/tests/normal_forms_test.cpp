#include <random>
#include <set>

#include "doctest.h"
#include "ddeg/errors.hpp"
#include "ddeg/normal_forms.hpp"
#include "support.hpp"

using namespace ddeg;
using testsupport::E;
using testsupport::P;
using testsupport::Surd;
using testsupport::surd;
using testsupport::Z;

namespace {

std::string sn(long v) { return std::to_string(v); }

// Brute-force value sets, independent of the library: (a + sqrt(a^2 + 4bc))/2 as exact keys.
std::set<Surd> affine_triangular_oracle(int d) {
  std::set<Surd> s;
  for (long a = 0; a <= d; ++a)
    for (long b = 0; a + b <= d; ++b)
      for (long c = 0; c <= d; ++c) {
        Surd v = surd(a, a * a + 4 * b * c);
        if (!(v.D == 0 && v.a == 0)) s.insert(v);
      }
  return s;
}
std::set<Surd> shiftlike_oracle(int d) {
  std::set<Surd> s;
  for (long e = 1; e <= d; ++e)
    for (long a = 0; a <= e; ++a) s.insert(surd(a, a * a + 4 * e - 4 * a));
  return s;
}
std::set<Surd> shiftlike_exact_oracle(long e) {
  std::set<Surd> s;
  for (long a = 0; a <= e; ++a) s.insert(surd(a, a * a + 4 * e - 4 * a));
  return s;
}
std::set<Surd> exactly_at(const std::vector<SpectrumEntry>& es, int d) {
  std::set<Surd> s;
  for (const auto& e : es)
    if (std::find(e.degrees.begin(), e.degrees.end(), d) != e.degrees.end()) s.insert(testsupport::surd_of(e.quadratic));
  return s;
}
std::set<Surd> keys(const std::vector<SpectrumEntry>& es) {
  std::set<Surd> s;
  for (const auto& e : es) s.insert(testsupport::surd_of(e.quadratic));
  return s;
}
std::set<Surd> new_at(const std::vector<SpectrumEntry>& es, int d) {
  std::set<Surd> s;
  for (const auto& e : es)
    if (e.first_degree == d) s.insert(testsupport::surd_of(e.quadratic));
  return s;
}
// Surd of (p + q sqrt r)/2 style literals used for the frozen sets below: value (a + sqrt D)/2
Surd S(long a, long D) { return surd(a, D); }

}  // namespace

TEST_CASE("shape classification") {
  ShapeInfo s = classify_shape(E("(x3 + x1*x2, x2 + x1^3, x1)"));
  CHECK(s.has("permutation-triangular"));
  CHECK(s.has("affine-triangular"));
  CHECK(classify_shape(E("(x4 + x1*x2^2*x3 + x3^2, x1, x2, x3)")).has("shift-like"));
  CHECK(classify_shape(E("(x4 + x1*x2^2*x3 + x3^2, x1, x2, x3)")).primary == "shift-like");
  CHECK(classify_shape(E("(2*x1 + x2 - 1, x1 + x2)")).primary == "affine");
  CHECK(classify_shape(E("(x2, x3, x1)")).primary == "permutation");
  CHECK(classify_shape(E("(x1, x2 + x1^2, x3 + x1*x2)")).has("triangular"));
  CHECK(classify_shape(E("(x1^2 + x2, x2^2)")).primary == "other");
}

TEST_CASE("affine-triangular factorization") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int k = 0; k < 20; ++k) {
    // alpha o tau with random invertible alpha
    QMatrix a(3, std::vector<mpq_class>(3));
    do {
      for (auto& row : a)
        for (auto& x : row) x = c(rng);
    } while (determinant(a) == 0);
    AffineMap alpha{a, {mpq_class(c(rng)), 0, mpq_class(c(rng))}};
    Endomorphism tau = E("(x1, x2 + x1^2, x3 + x1*x2 - x2^2)");
    Endomorphism f = compose(alpha.to_endomorphism(), tau);
    auto fac = factor_affine_triangular(f);
    REQUIRE(fac);
    CHECK(is_triangular(fac->tau));
    CHECK(compose(fac->alpha.to_endomorphism(), fac->tau) == f);

    BruhatResult br = bruhat_conjugate(fac->alpha, fac->tau);
    Endomorphism beta = br.conjugator.to_endomorphism();
    Endomorphism beta_inv = br.conjugator.inverse().to_endomorphism();
    CHECK(br.conjugated == compose(beta_inv, compose(f, beta)));
    CHECK(as_permutation_triangular(br.conjugated));
    CHECK(br.conjugated.degree() == f.degree());
  }
}

TEST_CASE("Bruhat conjugation special cases") {
  Endomorphism tau = E("(x1, x2 + x1^2, x3 + x2^2)");
  AffineMap perm{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, {0, 0, 0}};
  BruhatResult p = bruhat_conjugate(perm, tau);
  CHECK(p.conjugator.is_identity());

  AffineMap lower{{{1, 0, 0}, {2, 1, 0}, {-1, 3, 1}}, {0, 0, 0}};
  BruhatResult l = bruhat_conjugate(lower, tau);
  CHECK(l.result.sigma == std::vector<std::size_t>{0, 1, 2});
  CHECK(is_triangular(l.conjugated));

  QMatrix l1, l2;
  std::vector<std::size_t> sigma;
  QMatrix a = {{1, 2, 0}, {3, 1, 1}, {0, 1, 4}};
  bruhat_factor(a, l1, l2, sigma);
  // L1 * a * L2 is the permutation matrix of sigma
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      mpq_class v = 0;
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t m = 0; m < 3; ++m) v += l1[i][k] * a[k][m] * l2[m][j];
      CHECK(v == (sigma[i] == j ? 1 : 0));
      if (j > i) CHECK(l1[i][j] == 0);
      if (j > i) CHECK(l2[i][j] == 0);
    }
}

TEST_CASE("permutation-elementary normal forms") {
  PermElemNormalForm s = perm_elem_normal_form(E("(x3 + x1*x2^2, x1, x2)"));
  CHECK(s.m == 0);
  // sigma fixes the first coordinate
  PermElemNormalForm one = perm_elem_normal_form(E("(x1, x3 + x1*x2^2, x2)"));
  CHECK(one.m == 1);
  CHECK(compose(one.normal, E("(x1, x2, x3)")).arity() == 3);
  // elementary map with identity permutation
  PermElemNormalForm id = perm_elem_normal_form(E("(x1, x2, x3 + x1*x2)"));
  CHECK(id.m == id.n);
  CHECK_THROWS_AS(perm_elem_normal_form(E("(x1^2, x2)")), Error);
}

TEST_CASE("permutation-elementary closed forms") {
  for (long d = 1; d <= 5; ++d)
    for (long a = 0; a <= d; ++a) {
      Endomorphism f = E("(x3 + x1^" + sn(a) + "*x2^" + sn(d - a) + ", x1, x2)");
      PermElemDegree pd = perm_elem_dynamical_degree(perm_elem_normal_form(f));
      // largest root of x^2 - a x - (d - a)
      CHECK(pd.lambda == *largest_real_root(Z({-(d - a), -a, 1})));
      CHECK(pd.lambda.to_double() == doctest::Approx(testsupport::quad_root(a, d - a)));
    }
  CHECK(perm_elem_dynamical_degree(perm_elem_normal_form(E("(x2 + x1^3, x1)"))).lambda == RealAlgebraic::from_int(3));
  PermElemDegree low = perm_elem_dynamical_degree(perm_elem_normal_form(E("(x1, x3 + x1^5*x2, x2)")));
  CHECK(low.low_degree);
  CHECK(low.lambda == RealAlgebraic::from_int(1));
}

TEST_CASE("dimension three reduction step") {
  for (long n = 2; n <= 4; ++n) {
    Endomorphism f = E("(x3 - x2^" + sn(n) + ", x1, x2 + x1^" + sn(n) + ")");
    ReduceStep st = reduce_A3_step(f);
    CHECK(st.kind == ReduceStep::Kind::Reduced);
    CHECK(compose(st.result, st.conjugator) == compose(st.conjugator, f));
    CHECK(st.result.degree() <= f.degree());
    if (n == 2) CHECK(st.result == E("(x3, x1, x2)"));

    Endomorphism g = E("(x2 - x1^" + sn(n) + ", x3 + (x2 - x1^" + sn(n) + ")^" + sn(n) + ", x1)");
    ReduceStep sg = reduce_A3_step(g);
    CHECK(sg.kind == ReduceStep::Kind::Reduced);
    CHECK(compose(sg.result, sg.conjugator) == compose(sg.conjugator, g));
    CHECK(sg.result.degree() <= g.degree());
  }
  for (long d = 1; d <= 4; ++d)
    CHECK(reduce_A3_step(E("(x3 + x1*x2, x2 + x1^" + sn(d) + ", x1)")).kind == ReduceStep::Kind::AlreadyGood);

  // shape (ii) with deg p2 = theta but stable: the square of (x3 + x2^2, x1, x2), lambda = 2
  for (long n = 2; n <= 3; ++n) {
    Endomorphism h = E("(x2 + x1^" + sn(n) + ", x3 + x2^" + sn(n) + ", x1)");
    ReduceStep sh = reduce_A3_step(h);
    CHECK(sh.kind == ReduceStep::Kind::AlreadyGood);
    CHECK(sh.theta == RealAlgebraic::from_int(n));
    DynamicalDegreeResult r = affine_triangular_A3_dynamical_degree(h);
    REQUIRE(r.value);
    CHECK(*r.value == RealAlgebraic::from_int(n));
    CHECK(oracle_agrees(oracle_degree_sequence(h, 8), *r.value, 1e-3));
  }
}

TEST_CASE("dimension three affine-triangular dynamical degree") {
  for (long d = 1; d <= 6; ++d) {
    DynamicalDegreeResult r = affine_triangular_A3_dynamical_degree(E("(x3 + x1*x2, x2 + x1^" + sn(d) + ", x1)"));
    REQUIRE(r.value);
    CHECK(r.exact);
    CHECK(*r.value == *largest_real_root(Z({-d, -1, 1})));
  }
  for (long n = 2; n <= 4; ++n) {
    DynamicalDegreeResult r = affine_triangular_A3_dynamical_degree(E("(x3 - x2^" + sn(n) + ", x1, x2 + x1^" + sn(n) + ")"));
    REQUIRE(r.value);
    CHECK(*r.value == RealAlgebraic::from_int(1));
  }
  DynamicalDegreeResult two = affine_triangular_A3_dynamical_degree(E("(x3 + x1*x2^2, x1, x2)"));
  REQUIRE(two.value);
  CHECK(*two.value == RealAlgebraic::from_int(2));
}

TEST_CASE("outputs are Handelman numbers with no other positive conjugate") {
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; a + b <= 3; ++b)
      for (long cc = 0; cc <= 2; ++cc) {
        std::string w = "(x3 + x1^" + sn(a) + "*x2^" + sn(b) + ", x2 + x1^" + sn(cc) + ", x1)";
        Endomorphism f = E(w);
        if (!is_dominant(f)) continue;
        DynamicalDegreeResult r = affine_triangular_A3_dynamical_degree(f);
        REQUIRE(r.value);
        // largest root of x^2 - a x - bc, or 1 when that is smaller
        RealAlgebraic expect = std::max(*largest_real_root(Z({-b * cc, -a, 1})), RealAlgebraic::from_int(1),
                                        [](const RealAlgebraic& x, const RealAlgebraic& y) { return compare(x, y) < 0; });
        CHECK(*r.value == expect);
        int positive = 0;
        for (const auto& root : isolate_real_roots(Z({-b * cc, -a, 1})))
          if (compare(root, mpq_class(0)) > 0) ++positive;
        CHECK(positive <= 1);
      }
}

TEST_CASE("affine-triangular spectrum") {
  for (int d = 1; d <= 6; ++d) {
    auto es = enumerate_affine_triangular_set_A3(d);
    CHECK(keys(es) == affine_triangular_oracle(d));
    CHECK(es.size() == affine_triangular_oracle(d).size());
    for (std::size_t i = 1; i < es.size(); ++i) CHECK(es[i - 1].value < es[i].value);
  }
  CHECK(keys(enumerate_affine_triangular_set_A3(2)) == std::set<Surd>{S(2, 0), S(0, 8), S(1, 5), S(4, 0)});
  CHECK(new_at(enumerate_affine_triangular_set_A3(2), 2) == std::set<Surd>{S(0, 8), S(1, 5), S(4, 0)});
  CHECK(new_at(enumerate_affine_triangular_set_A3(3), 3) ==
        std::set<Surd>{S(0, 12), S(1, 13), S(2, 8), S(0, 24), S(1, 17), S(2, 12), S(6, 0)});
  CHECK(new_at(enumerate_affine_triangular_set_A3(4), 4) == std::set<Surd>{S(0, 32), S(2, 20), S(3, 13), S(1, 33), S(0, 48), S(1, 37),
                                                               S(3, 17), S(2, 28), S(3, 21), S(8, 0)});
}

TEST_CASE("shift-like spectrum") {
  for (int d = 1; d <= 7; ++d) {
    auto sh = keys(enumerate_shiftlike_set_A3(d));
    CHECK(sh == shiftlike_oracle(d));
    auto th = keys(enumerate_affine_triangular_set_A3(d));
    CHECK(std::includes(th.begin(), th.end(), sh.begin(), sh.end()));
    if (d >= 3) {
      CHECK(sh.size() < th.size());
      // (1 + sqrt(1 + 4d))/2 is not the dynamical degree of a shift-like map of degree d
      CHECK(th.count(S(1, 1 + 4 * d)) == 1);
      CHECK(shiftlike_exact_oracle(d).count(S(1, 1 + 4 * d)) == 0);
      CHECK(exactly_at(enumerate_shiftlike_set_A3(d), d) == shiftlike_exact_oracle(d));
      CHECK(exactly_at(enumerate_shiftlike_set_A3(d), d).count(S(1, 1 + 4 * d)) == 0);
    }
  }
  // the cumulative set can still contain it: 1 + 4*6 = 25 and 3 occurs in degree 3
  CHECK(keys(enumerate_shiftlike_set_A3(6)).count(S(1, 25)) == 1);
  CHECK(keys(enumerate_shiftlike_set_A3(5)).count(S(1, 21)) == 0);
  CHECK(new_at(enumerate_shiftlike_set_A3(3), 3) == std::set<Surd>{S(0, 12), S(2, 8), S(6, 0)});
  CHECK(new_at(enumerate_shiftlike_set_A3(4), 4) == std::set<Surd>{S(1, 13), S(2, 12), S(3, 13), S(8, 0)});
}

TEST_CASE("every spectrum value is reproduced on its witness") {
  for (const auto& e : enumerate_affine_triangular_set_A3(3)) {
    REQUIRE_FALSE(e.witnesses.empty());
    for (const auto& w : e.witnesses) {
      DynamicalDegreeResult r = dynamical_degree(E(w));
      REQUIRE(r.value);
      CHECK(r.exact);
      CHECK(*r.value == e.value);
    }
  }
}
