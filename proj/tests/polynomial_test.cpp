#include <random>

#include "doctest.h"
#include "ddeg/errors.hpp"
#include "ddeg/polynomial.hpp"
#include "support.hpp"

using namespace ddeg;
using testsupport::E;
using testsupport::P;

TEST_CASE("parse and print round trip") {
  for (const char* s : {"(x3 + x1*x2, x2 + x1^3, x1)", "(x1^2 + x2, x1, x3 + (x3 + x4)^2, x4 - (x3 + x4)^2)",
                        "(1/2*x1 - 3, x2)", "(x2 - x1^2, x3 + (x2 - x1^2)^2, x1)", "(7, x1*x2)"}) {
    Endomorphism f = E(s);
    CHECK(parse_endomorphism(f.str()) == f);
  }
  std::mt19937 rng(11);
  for (int k = 0; k < 50; ++k) {
    Endomorphism f = testsupport::random_endo(rng, 3, 4, 4);
    CHECK(parse_endomorphism(f.str()) == f);
  }
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(E("(x1, x1^"), ParseError);
  CHECK_THROWS_AS(E("(x1, y2)"), ParseError);
  CHECK_THROWS_AS(E("x1, x2"), ParseError);
  try {
    E("(x1 + * x2, x1)");
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
  // a variable beyond the number of components is a structural problem
  CHECK_THROWS(E("(x1, x3)"));
}

TEST_CASE("compose") {
  Endomorphism f = E("(x3 + x1*x2, x2 + x1^2, x1)");
  CHECK(compose(Endomorphism::identity(3), f) == f);
  CHECK(compose(f, Endomorphism::identity(3)) == f);
  Endomorphism s = E("(x2, x1)");
  CHECK(compose(s, s) == Endomorphism::identity(2));

  Endomorphism f2 = compose(f, f);
  CHECK(f2.degree() == 4);
  // reference expansion
  std::vector<testsupport::RefPoly> inner;
  for (const auto& c : f.components()) inner.push_back(testsupport::ref_from(c));
  for (std::size_t i = 0; i < 3; ++i) {
    auto ref = testsupport::ref_subst(testsupport::ref_from(f[i]), inner, 3);
    CHECK(testsupport::ref_equal(ref, f2[i]));
  }
}

TEST_CASE("iterate") {
  Endomorphism f = E("(x3 + x1*x2, x2 + x1^2, x1)");
  CHECK(iterate(f, 1) == f);
  for (unsigned n = 2; n <= 4; ++n) {
    std::string sn = std::to_string(n);
    CHECK(iterate(E("(x3 - x2^" + sn + ", x1, x2 + x1^" + sn + ")"), 3) == Endomorphism::identity(3));
    CHECK(iterate(E("(x2 - x1^" + sn + ", x3 + (x2 - x1^" + sn + ")^" + sn + ", x1)"), 3) == Endomorphism::identity(3));
  }
}

TEST_CASE("degrees") {
  CHECK(Polynomial(3).total_degree() == kNegInfDegree);
  CHECK(E("(x3 + x1*x2, x2 + x1^3, x1)").degree() == 3);
  CHECK(P("x1^5*x2", 3).partial_degree({1, 2}) == 1);
  CHECK(P("x1^3", 2).partial_degree({1}) == 0);
  CHECK(P("(x2 + x1*x3)^2", 3).partial_degree({1, 2}) == 2);
  CHECK(P("x1^2*x2^3 + x3", 3).degree_in(1) == 3);
}

TEST_CASE("dominance") {
  CHECK_FALSE(is_dominant(E("(x1, x1^2)")));
  CHECK(is_dominant(E("(x1, x2 + x1^3, x3*x2 + 1)")));
  CHECK_FALSE(is_dominant(E("(x1*x2, x1*x2)")));
  CHECK(is_dominant(E("(x1*x2, x1^2*x2)")));
  // triangular: dominant exactly when each f_i involves x_i
  CHECK_FALSE(is_dominant(E("(x1, x1^2 + 1, x3 + x2)")));
  CHECK(is_triangular(E("(x1, x2 + x1^3, x3*x2 + 1)")));
  CHECK_FALSE(is_triangular(E("(x2, x1)")));
}

TEST_CASE("composition laws on random maps") {
  std::mt19937 rng(2024);
  for (int k = 0; k < 30; ++k) {
    Endomorphism f = testsupport::random_endo(rng, 3, 2, 3);
    Endomorphism g = testsupport::random_endo(rng, 3, 2, 3);
    Endomorphism h = testsupport::random_endo(rng, 3, 2, 2);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    Endomorphism fg = compose(f, g);
    if (!fg[0].is_zero() || !fg[1].is_zero() || !fg[2].is_zero())
      CHECK(fg.degree() <= f.degree() * g.degree());
    CHECK(iterate(f, 3) == compose(iterate(f, 1), iterate(f, 2)));
    CHECK(iterate(f, 2).degree() <= f.degree() * f.degree());
  }
}

TEST_CASE("triangular automorphisms have degree one in the last variable") {
  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    // tau_i = x_i + p_i(x_1..x_{i-1})
    Endomorphism r = testsupport::random_endo(rng, 3, 3, 2);
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < 3; ++i) {
      Polynomial p = r[i].filter([&](const Term& t) {
        for (std::size_t j = i; j < 3; ++j)
          if (t.mono[j]) return false;
        return true;
      });
      comps.push_back(Polynomial::variable(3, i) + p);
    }
    Endomorphism tau(comps);
    CHECK(is_triangular(tau));
    CHECK(is_dominant(tau));
    for (std::size_t i = 0; i < 3; ++i) CHECK(tau[i].degree_in(i) == 1);
  }
}

TEST_CASE("budget exhaustion is reported") {
  Budget b;
  b.max_terms = 50;
  CHECK_THROWS_AS(iterate(E("(x3 + x1*x2^2 + x2, x2 + x1^3 + x3, x1 + x2)"), 4, b), ResourceError);
}
