#include "kt/gauge.hpp"

#include <algorithm>
#include <sstream>

#include "kt/groebner.hpp"

namespace kt {

namespace {

std::vector<JetPolynomial> el_column(const GaugeTheory& theory) {
  std::vector<JetPolynomial> el;
  for (int a = 1; a <= theory.ctx->r; ++a)
    el.push_back(euler_lagrange(theory.lagrangian, a));
  return el;
}

}  // namespace

JetCtxPtr make_gauge_ctx(int n, int r, int noether_rows, unsigned max_order) {
  JetContext ctx;
  ctx.n = n;
  ctx.r = r;
  ctx.tiers = noether_rows > 0 ? std::vector<int>{r, noether_rows}
                               : std::vector<int>{r};
  ctx.max_order = max_order;
  return std::make_shared<const JetContext>(ctx);
}

NoetherVerdict check_noether(const GaugeTheory& theory, unsigned check_depth) {
  NoetherVerdict verdict;
  auto el = el_column(theory);
  auto residues = op_apply(theory.noether, el);
  for (auto& res : residues) {
    if (!res.is_zero()) verdict.ok = false;
    verdict.residues.push_back(res);
    // extended identities: D^beta of a vanishing identity must stay zero
    for (const auto& beta : multi_indices_up_to(theory.ctx->n, check_depth)) {
      if (mi_order(beta) == 0) continue;
      if (!total_derivative(beta, res).is_zero()) verdict.ok = false;
    }
  }
  return verdict;
}

GaugeKtComplex build_gauge_kt(const GaugeTheory& theory) {
  GaugeKtComplex kt;
  kt.theory = theory;
  kt.el = el_column(theory);
  auto ctx = theory.ctx;
  auto el = kt.el;
  auto noether = theory.noether;

  // Noether rows applied (with extended total derivatives) to the tier-1
  // antifield column; computed once, shifted per multi-index on demand.
  std::vector<JetPolynomial> tier2_base;
  if (ctx->tiers.size() >= 2) {
    std::vector<JetPolynomial> af1;
    for (int a = 1; a <= ctx->r; ++a) {
      JetVar v{JetKind::Anti, a, 1, MultiIndex(ctx->n, 0)};
      af1.push_back(JetPolynomial::var(ctx, v));
    }
    tier2_base = op_apply(noether, af1);
  }

  kt.delta.ctx = ctx;
  kt.delta.parity = 1;
  kt.delta.image = [ctx, el, tier2_base](const JetVar& v) -> JetPolynomial {
    if (v.kind != JetKind::Anti) return JetPolynomial(ctx);
    if (v.tier == 1) return total_derivative(v.mi, el[v.index - 1]);
    if (v.tier == 2) return total_derivative(v.mi, tier2_base[v.index - 1]);
    throw structural_error("no Koszul-Tate image for tier " +
                           std::to_string(v.tier));
  };
  return kt;
}

std::optional<KtSquareWitness> kt_square_witness(const JetDerivation& delta,
                                                 unsigned depth) {
  auto ctx = delta.ctx;
  auto mis = multi_indices_up_to(ctx->n, depth);
  for (int tier = 1; tier <= static_cast<int>(ctx->tiers.size()); ++tier) {
    for (int comp = 1; comp <= ctx->tiers[tier - 1]; ++comp) {
      for (const auto& mi : mis) {
        JetVar g{JetKind::Anti, comp, tier, mi};
        auto once = derivation_apply(delta, JetPolynomial::var(ctx, g));
        auto twice = derivation_apply(delta, once);
        if (!twice.is_zero()) return KtSquareWitness{g, twice};
      }
    }
  }
  return std::nullopt;
}

std::optional<KtSquareWitness> kt_square_witness(const GaugeKtComplex& kt,
                                                 unsigned depth) {
  return kt_square_witness(kt.delta, depth);
}

namespace {

// Translation of antifield-free jet polynomials into an ordinary polynomial
// ring with one variable per jet coordinate seen in the batch.
struct PolyModel {
  std::map<JetVar, int> index;  // 1-based
  int nvars = 0;

  void collect(const JetPolynomial& F) {
    for (const auto& [word, c] : F.terms())
      for (const auto& [v, e] : word) {
        if (v.kind == JetKind::Anti)
          throw structural_error("antifield in degree-0 translation");
        if (index.emplace(v, 0).second) ++nvars;
      }
  }

  void freeze() {
    int i = 1;
    for (auto& [v, idx] : index) idx = i++;
  }

  Polynomial to_poly(const JetPolynomial& F) const {
    Polynomial p(nvars);
    for (const auto& [word, c] : F.terms()) {
      Exponents e(static_cast<size_t>(nvars), 0);
      for (const auto& [v, k] : word)
        e[static_cast<size_t>(index.at(v)) - 1] += k;
      p.add_term(e, c);
    }
    return p;
  }
};

}  // namespace

KtH0Report kt_h0_report(const GaugeKtComplex& kt, unsigned order_bound,
                        unsigned samples) {
  KtH0Report report;
  auto ctx = kt.theory.ctx;
  auto mis = multi_indices_up_to(ctx->n, order_bound);

  // shell ideal generators: all prolongations of the EL column up to bound
  std::vector<std::pair<JetVar, JetPolynomial>> shell;
  for (int a = 1; a <= ctx->r; ++a)
    for (const auto& alpha : mis) {
      JetVar v{JetKind::Anti, a, 1, alpha};
      shell.emplace_back(v, total_derivative(alpha, kt.el[a - 1]));
    }

  // degree-0 boundaries to test: the generator images plus sampled
  // function-linear combinations f * delta(af)
  std::mt19937 rng(987654u);
  std::vector<JetPolynomial> boundaries;
  for (const auto& [v, g] : shell) boundaries.push_back(g);
  std::vector<JetPolynomial> factors;
  factors.push_back(JetPolynomial::constant(ctx, Rational(1, 2)));
  for (int i = 1; i <= ctx->n; ++i)
    factors.push_back(JetPolynomial::var(ctx, JetVar{JetKind::Base, i, 0, {}}));
  for (int a = 1; a <= ctx->r; ++a)
    factors.push_back(JetPolynomial::var(
        ctx, JetVar{JetKind::Anti, a, 1, MultiIndex(ctx->n, 0)}));
  for (unsigned s = 0; s < samples; ++s) {
    auto chain = factors[rng() % factors.size()] *
                 factors[rng() % factors.size()];
    if (!chain.mentions_antifields()) {
      JetVar v{JetKind::Anti, 1 + static_cast<int>(rng() % ctx->r), 1,
               MultiIndex(ctx->n, 0)};
      chain = chain * JetPolynomial::var(ctx, v);
    }
    if (chain.hdegree() != 1) continue;  // odd squares collapse to zero
    boundaries.push_back(derivation_apply(kt.delta, chain));
    ++report.samples_checked;
  }

  PolyModel model;
  for (const auto& [v, g] : shell) model.collect(g);
  for (const auto& b : boundaries) model.collect(b);
  model.freeze();

  std::vector<Polynomial> gens;
  for (const auto& [v, g] : shell) gens.push_back(model.to_poly(g));
  Ideal shell_ideal(model.nvars, gens);

  for (size_t i = 0; i < boundaries.size(); ++i) {
    if (!ideal_member(model.to_poly(boundaries[i]), shell_ideal)) {
      report.boundaries_in_shell_ideal = false;
      if (report.failure.empty())
        report.failure = "boundary outside shell ideal: " + boundaries[i].str();
    }
  }

  // converse: each shell generator is exhibited as a boundary
  for (const auto& [v, g] : shell) {
    ++report.generators_checked;
    auto img = derivation_apply(kt.delta, JetPolynomial::var(ctx, v));
    if (img != g) {
      report.shell_generators_are_boundaries = false;
      if (report.failure.empty())
        report.failure = "shell generator not a boundary at " + v.str();
    }
  }
  return report;
}

bool verify_kt_dlinearity(const GaugeKtComplex& kt, int samples,
                          unsigned seed) {
  auto ctx = kt.theory.ctx;
  std::mt19937 rng(seed);

  std::vector<JetVar> gens;
  for (int tier = 1; tier <= static_cast<int>(ctx->tiers.size()); ++tier)
    for (int comp = 1; comp <= ctx->tiers[tier - 1]; ++comp)
      for (const auto& mi : multi_indices_up_to(ctx->n, 1))
        gens.push_back(JetVar{JetKind::Anti, comp, tier, mi});

  std::vector<JetPolynomial> coeffs;
  coeffs.push_back(JetPolynomial::constant(ctx, 1));
  coeffs.push_back(JetPolynomial::constant(ctx, Rational(-3, 7)));
  for (int i = 1; i <= ctx->n; ++i) {
    auto x = JetPolynomial::var(ctx, JetVar{JetKind::Base, i, 0, {}});
    coeffs.push_back(x);
    coeffs.push_back(x * x + JetPolynomial::constant(ctx, 2));
  }

  auto betas = multi_indices_up_to(ctx->n, 2);
  for (int s = 0; s < samples; ++s) {
    const auto& c = coeffs[rng() % coeffs.size()];
    const auto& beta = betas[rng() % betas.size()];
    const auto& gv = gens[rng() % gens.size()];
    auto g = JetPolynomial::var(ctx, gv);
    auto lhs = derivation_apply(kt.delta, c * total_derivative(beta, g));
    auto rhs = c * total_derivative(beta, derivation_apply(kt.delta, g));
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace kt
