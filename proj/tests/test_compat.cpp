#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "kt/compat.hpp"

using namespace kt;

namespace {

JetPolynomial JP(const std::string& s, const JetCtxPtr& c) {
  return JetPolynomial::parse(s, c);
}

GaugeTheory maxwell2d() {
  auto ctx = make_gauge_ctx(2, 2, 1);
  auto F = JP("u1_{0,1} - u2_{1,0}", ctx);
  GaugeTheory theory;
  theory.ctx = ctx;
  theory.lagrangian = F * F * Rational(1, 4);
  theory.noether = TotalDiffOperator{
      1, 2, ctx, {{parse_op_entry("D1", ctx), parse_op_entry("D2", ctx)}}};
  return theory;
}

}  // namespace

TEST_CASE("gradient-curl-divergence chain validates in three dimensions") {
  auto spec = derham_spec(3);
  CHECK(spec.ctx->tiers == std::vector<int>{3, 3, 1});
  auto verdict = validate_compat(spec);
  CHECK(verdict.ok);
  for (const auto& res : verdict.psi_residues) CHECK(res.is_zero());
  REQUIRE(verdict.compose_residues.size() == 1);
}

TEST_CASE("one flipped sign in the curl leaves a mixed-partial residue") {
  auto spec = make_compat_spec(
      3, 1, {"u1_{1,0,0}", "u1_{0,1,0}", "u1_{0,0,1}"},
      {{{"0", "D3", "D2"},  // first row sign flipped
        {"D3", "0", "0 - D1"},
        {"0 - D2", "D1", "0"}},
       {{"D1", "D2", "D3"}}});
  auto verdict = validate_compat(spec);
  CHECK_FALSE(verdict.ok);
  CHECK(verdict.psi_residues[0] == JP("2*u1_{0,1,1}", spec.ctx));
  CHECK_THROWS_AS(build_compat_kt(spec), structural_error);
}

TEST_CASE("zero first operator validates trivially") {
  auto spec = make_compat_spec(1, 1, {"u1_{2}"}, {{{"0"}}});
  CHECK(validate_compat(spec).ok);
  auto kt = build_compat_kt(spec);
  CHECK(derivation_apply(kt.delta, JP("af2_1_{0}", spec.ctx)).is_zero());
}

TEST_CASE("single-tier spec gives a Koszul-type differential") {
  auto spec = make_compat_spec(1, 1, {"u1_{1}"}, {});
  auto kt = build_compat_kt(spec);
  auto c = spec.ctx;
  CHECK(derivation_apply(kt.delta, JP("af1_1_{0}", c)) == JP("u1_{1}", c));
  CHECK(derivation_apply(kt.delta, JP("af1_1_{2}", c)) == JP("u1_{3}", c));
  CHECK_FALSE(kt_square_witness(kt.delta, 2).has_value());
}

TEST_CASE("three-dimensional chain: tier images and square-zero") {
  auto kt = build_compat_kt(derham_spec(3));
  auto c = kt.spec.ctx;
  CHECK(derivation_apply(kt.delta, JP("af1_1_{0,0,0}", c)) ==
        JP("u1_{1,0,0}", c));
  // curl row 1 applied to the first tier
  CHECK(derivation_apply(kt.delta, JP("af2_1_{0,0,0}", c)) ==
        JP("-1*af1_2_{0,0,1} + af1_3_{0,1,0}", c));
  // divergence applied to the second tier
  CHECK(derivation_apply(kt.delta, JP("af3_1_{0,0,0}", c)) ==
        JP("af2_1_{1,0,0} + af2_2_{0,1,0} + af2_3_{0,0,1}", c));
  CHECK_FALSE(kt_square_witness(kt.delta, 1).has_value());
}

TEST_CASE("tier parity bookkeeping carries into the staged algebra") {
  auto kt = build_compat_kt(derham_spec(2));
  auto state = as_resolution_state(kt, 1);
  for (const auto& g : state.cx.alg->generators()) {
    CHECK(g.degree == g.block);
    CHECK(g.odd() == (g.degree % 2 == 1));
  }
  auto report = verify_sullivan_type(state);
  CHECK(report.ok);
}

TEST_CASE("staged snapshot of the three-dimensional chain is lowering") {
  auto kt = build_compat_kt(derham_spec(3));
  auto state = as_resolution_state(kt, 1);
  CHECK(state.rounds == 3);
  CHECK(verify_sullivan_type(state).ok);
}

TEST_CASE("depth-2 recast of a gauge theory matches the direct build") {
  auto theory = maxwell2d();
  auto direct = build_gauge_kt(theory);
  auto recast = build_compat_kt(compat_from_gauge(theory));
  auto a = as_resolution_state(direct, 1);
  auto b = as_resolution_state(recast, 1);
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(verify_sullivan_type(a).ok);
}

TEST_CASE("image touching its own tier breaks the lowering condition") {
  auto kt = build_compat_kt(derham_spec(3));
  auto state = as_resolution_state(kt, 0);
  auto alg = state.cx.alg;
  int i = alg->find("v2_1_0_0_0");
  int j = alg->find("v2_2_0_0_0");
  REQUIRE(i >= 0);
  REQUIRE(j >= 0);
  state.cx.d.images[static_cast<unsigned>(i)] =
      GcaElement::generator(alg, static_cast<unsigned>(j));
  auto report = verify_sullivan_type(state);
  CHECK_FALSE(report.ok);
}
