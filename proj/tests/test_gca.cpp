#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "kt/gca.hpp"

using namespace kt;

static Polynomial P(const std::string& s, int n) {
  return Polynomial::parse(s, n);
}

namespace {

// Exterior algebra on e1, e2 over Q[x1, x2], weights 1.
AlgebraPtr koszul2() {
  return make_algebra(QuotientRing(2), {{"e1", 1, 1, 1}, {"e2", 1, 1, 1}});
}

GcaElement gen(const AlgebraPtr& a, const std::string& name) {
  return GcaElement::generator(a, a->find(name));
}

}  // namespace

TEST_CASE("generator printing") {
  GeneratorSpec g{"e1", 1, 3, 0};
  CHECK(g.str() == "e1{deg=1,w=3}");
}

TEST_CASE("odd anticommutativity and odd squares") {
  auto A = koszul2();
  auto e1 = gen(A, "e1"), e2 = gen(A, "e2");
  CHECK(gca_mul(e1, e2) == -gca_mul(e2, e1));
  CHECK(gca_mul(e1, e1).is_zero());
  CHECK(gca_mul(gca_mul(e1, e2), e1).is_zero());
}

TEST_CASE("even generators are sign-central") {
  auto A = make_algebra(QuotientRing(1), {{"e", 1, 1, 1}, {"f", 2, 2, 2}});
  auto e = gen(A, "e"), f = gen(A, "f");
  CHECK(gca_mul(f, e) == gca_mul(e, f));
  CHECK_FALSE(gca_mul(f, f).is_zero());
}

TEST_CASE("coefficients reduce to ring normal form") {
  QuotientRing R(Ideal(1, {P("x1^2", 1)}));
  auto A = make_algebra(R, {{"e", 1, 1, 1}});
  auto x = GcaElement::scalar(A, P("x1", 1));
  auto e = gen(A, "e");
  CHECK(gca_mul(x, gca_mul(x, e)).is_zero());
}

TEST_CASE("gca_mul randomized algebra laws") {
  auto A = make_algebra(QuotientRing(2), {{"e1", 1, 1, 1},
                                          {"e2", 1, 1, 1},
                                          {"e3", 1, 2, 1},
                                          {"f1", 2, 2, 2},
                                          {"f2", 2, 3, 2}});
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> pick(0, 4), coeff(-3, 3), expo(0, 2);
  auto random_homog = [&]() {
    // Random monomial-with-coefficient element; homogeneous by construction.
    GcaElement v = GcaElement::generator(A, pick(rng));
    if (pick(rng) < 2) v = gca_mul(v, GcaElement::generator(A, pick(rng)));
    Polynomial c(2);
    c.add_term({(unsigned)expo(rng), (unsigned)expo(rng)},
               Rational(coeff(rng) * 2 + 1));
    return gca_mul(GcaElement::scalar(A, c), v);
  };
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_homog(), b = random_homog(), c = random_homog();
    // associative
    CHECK(gca_mul(gca_mul(a, b), c) == gca_mul(a, gca_mul(b, c)));
    // unital
    auto one = GcaElement::scalar(A, Polynomial::constant(2, 1));
    CHECK(gca_mul(one, a) == a);
    // graded commutative
    int da = a.degree(), db = b.degree();
    if (da >= 0 && db >= 0) {
      auto ba = gca_mul(b, a);
      if ((da * db) % 2) ba = -ba;
      CHECK(gca_mul(a, b) == ba);
    }
  }
}

TEST_CASE("degree and weight are additive") {
  auto A = make_algebra(QuotientRing(2), {{"e1", 1, 1, 1}, {"f1", 2, 3, 2}});
  auto a = gca_mul(GcaElement::scalar(A, P("x1*x2", 2)), gen(A, "e1"));
  auto b = gen(A, "f1");
  CHECK(a.degree() == 1);
  CHECK(a.weight() == 3);
  auto ab = gca_mul(a, b);
  CHECK(ab.degree() == 3);
  CHECK(ab.weight() == 6);
  CHECK(ab.weight_homogeneous());
}

TEST_CASE("koszul differential on a 2-form") {
  auto A = koszul2();
  Derivation d{A, -1,
               {{0u, GcaElement::scalar(A, P("x1", 2))},
                {1u, GcaElement::scalar(A, P("x2", 2))}}};
  auto e1 = gen(A, "e1"), e2 = gen(A, "e2");
  auto de12 = derivation_apply(d, gca_mul(e1, e2));
  // d(e1 e2) = x1 e2 - x2 e1
  auto expect = gca_mul(GcaElement::scalar(A, P("x1", 2)), e2) -
                gca_mul(GcaElement::scalar(A, P("x2", 2)), e1);
  CHECK(de12 == expect);
  // d(1) = 0
  CHECK(derivation_apply(d, GcaElement::scalar(A, P("1", 2))).is_zero());
  // F-linearity over coefficients
  auto F = P("x1^2 + 1", 2);
  CHECK(derivation_apply(d, gca_mul(GcaElement::scalar(A, F), e1)) ==
        GcaElement::scalar(A, F * P("x1", 2)));
}

TEST_CASE("derivation satisfies graded Leibniz") {
  auto A = make_algebra(QuotientRing(2), {{"e1", 1, 1, 1},
                                          {"e2", 1, 1, 1},
                                          {"f1", 2, 2, 2}});
  Derivation d{A, -1,
               {{0u, GcaElement::scalar(A, P("x1", 2))},
                {1u, GcaElement::scalar(A, P("x2", 2))},
                {2u, gca_mul(GcaElement::scalar(A, P("x2", 2)),
                             GcaElement::generator(A, 0))}}};
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(0, 2), expo(0, 2), coeff(1, 4);
  auto random_homog = [&]() {
    GcaElement v = GcaElement::generator(A, pick(rng));
    if (pick(rng) == 0) v = gca_mul(v, GcaElement::generator(A, pick(rng)));
    Polynomial c(2);
    c.add_term({(unsigned)expo(rng), (unsigned)expo(rng)}, coeff(rng));
    return gca_mul(GcaElement::scalar(A, c), v);
  };
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_homog(), b = random_homog();
    if (a.is_zero() || b.is_zero()) continue;
    auto lhs = derivation_apply(d, gca_mul(a, b));
    auto rhs = gca_mul(derivation_apply(d, a), b);
    auto adb = gca_mul(a, derivation_apply(d, b));
    if (a.degree() % 2) adb = -adb;
    CHECK(lhs == rhs + adb);
  }
}

TEST_CASE("square witness") {
  auto A = koszul2();
  // Koszul differential squares to zero.
  Derivation dk{A, -1,
                {{0u, GcaElement::scalar(A, P("x1", 2))},
                 {1u, GcaElement::scalar(A, P("x2", 2))}}};
  CHECK_FALSE(derivation_square_witness(dk).has_value());

  // de = x, df = e gives d(d(f)) = x.
  auto B = make_algebra(QuotientRing(1), {{"e", 1, 1, 1}, {"f", 2, 1, 2}});
  Derivation bad{B, -1,
                 {{0u, GcaElement::scalar(B, P("x1", 1))},
                  {1u, GcaElement::generator(B, 0)}}};
  auto w = derivation_square_witness(bad);
  REQUIRE(w.has_value());
  CHECK(w->generator == "f");
  CHECK(w->value == GcaElement::scalar(B, P("x1", 1)));

  // Over Q[x]/(x^2): de = x, df = x e has d(d(f)) = x^2 = 0.
  auto C = make_algebra(QuotientRing(Ideal(1, {P("x1^2", 1)})),
                        {{"e", 1, 1, 1}, {"f", 2, 2, 2}});
  Derivation tate{C, -1,
                  {{0u, GcaElement::scalar(C, P("x1", 1))},
                   {1u, gca_mul(GcaElement::scalar(C, P("x1", 1)),
                                GcaElement::generator(C, 0))}}};
  CHECK_FALSE(derivation_square_witness(tate).has_value());
}

TEST_CASE("promotion into an extended algebra") {
  auto A = koszul2();
  auto B = A->extended({{"f1", 2, 2, 2}});
  auto e1 = gen(A, "e1");
  auto big = e1.promoted(B);
  CHECK(big.algebra() == B);
  CHECK(gca_mul(big, gen(B, "f1")).degree() == 3);
  // mixed-algebra products promote automatically
  CHECK(gca_mul(e1, gen(B, "f1")) == gca_mul(big, gen(B, "f1")));
}

TEST_CASE("deterministic element printing") {
  auto A = koszul2();
  auto e1 = gen(A, "e1"), e2 = gen(A, "e2");
  auto v = gca_mul(GcaElement::scalar(A, P("x1", 2)), gca_mul(e1, e2)) + e1;
  CHECK(v.str() == "(1)*e1 + (x1)*e1*e2");
}
