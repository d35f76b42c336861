#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "kt/polynomial.hpp"

using namespace kt;

static Polynomial P(const std::string& s, int n) {
  return Polynomial::parse(s, n);
}

TEST_CASE("ring arithmetic basics") {
  // (x+1)(x-1) = x^2-1
  CHECK(P("x1 + 1", 1) * P("x1 - 1", 1) == P("x1^2 - 1", 1));
  // p*0 = 0
  CHECK((P("x1^2 - 1", 1) * Polynomial(1)).is_zero());
  // (x+y)^2 = x^2+2xy+y^2
  Polynomial s = P("x1 + x2", 2);
  CHECK(s * s == P("x1^2 + 2*x1*x2 + x2^2", 2));
}

TEST_CASE("variable count mismatch is rejected") {
  CHECK_THROWS_AS(P("x1", 1) + P("x1", 2), structural_error);
  CHECK_THROWS_AS(P("x1", 1) * P("x1", 2), structural_error);
}

TEST_CASE("grevlex order") {
  GrevlexGreater gt;
  // degree dominates
  CHECK(gt({2, 0}, {1, 0}));
  // same degree: x1^2 > x1*x2 > x2^2
  CHECK(gt({2, 0}, {1, 1}));
  CHECK(gt({1, 1}, {0, 2}));
  // classic grevlex tie-break in 3 vars: x2^2 > x1*x3
  CHECK(gt({0, 2, 0}, {1, 0, 1}));
  CHECK_FALSE(gt({1, 1}, {1, 1}));
}

TEST_CASE("degree and homogeneity") {
  CHECK(Polynomial(2).degree() == -1);
  CHECK(P("x1^2*x2 + x2^3", 2).degree() == 3);
  CHECK(P("x1^2*x2 + x2^3", 2).is_homogeneous());
  CHECK_FALSE(P("x1^2 + x2", 2).is_homogeneous());
  CHECK(P("5", 1).is_constant());
}

TEST_CASE("printing") {
  CHECK(Polynomial(3).str() == "0");
  CHECK(P("3/2*x1^2*x2 - x3", 3).str() == "3/2*x1^2*x2 - x3");
  CHECK(P("-x1 + 1", 1).str() == "-x1 + 1");
  CHECK(P("x2 + x1^2", 2).str() == "x1^2 + x2");
  CHECK(P("1*x1", 1).str() == "x1");
  CHECK(P("7/3", 1).str() == "7/3");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(P("", 1), structural_error);
  CHECK_THROWS_AS(P("x2", 1), structural_error);
  CHECK_THROWS_AS(P("x1 x2", 2), structural_error);
  CHECK_THROWS_AS(P("1/0", 1), structural_error);
  CHECK_THROWS_AS(P("x1 + ", 1), structural_error);
  CHECK_THROWS_AS(P("y1", 1), structural_error);
}

TEST_CASE("parse/print round trip on random polynomials") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> nterms(1, 8), expo(0, 4);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 4;
    Polynomial p(n);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
      Exponents e(n);
      for (int i = 0; i < n; ++i) e[i] = expo(rng);
      p.add_term(e, Rational(num(rng), den(rng)));
    }
    if (p.is_zero()) continue;
    CHECK(Polynomial::parse(p.str(), n) == p);
  }
}

TEST_CASE("exponent helpers") {
  CHECK(divides({1, 0}, {2, 3}));
  CHECK_FALSE(divides({1, 4}, {2, 3}));
  CHECK(exp_add({1, 2}, {3, 0}) == Exponents{4, 2});
  CHECK(exp_sub({4, 2}, {3, 0}) == Exponents{1, 2});
  CHECK(exp_lcm({1, 5}, {2, 3}) == Exponents{2, 5});
}
