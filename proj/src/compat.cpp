#include "kt/compat.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace kt {

namespace {

bool op_is_zero(const TotalDiffOperator& A) {
  for (const auto& row : A.entries)
    for (const auto& e : row)
      for (const auto& [beta, c] : e.terms)
        if (!c.is_zero()) return false;
  return true;
}

void check_shapes(const CompatComplexSpec& spec) {
  int prev = static_cast<int>(spec.psi.size());
  for (size_t i = 0; i < spec.deltas.size(); ++i) {
    const auto& d = spec.deltas[i];
    if (d.cols != prev)
      throw structural_error("operator " + std::to_string(i + 1) + " has " +
                             std::to_string(d.cols) + " columns, expected " +
                             std::to_string(prev));
    prev = d.rows;
  }
}

}  // namespace

CompatComplexSpec make_compat_spec(
    int n, int r, const std::vector<std::string>& psi,
    const std::vector<std::vector<std::vector<std::string>>>& deltas,
    unsigned max_order) {
  if (psi.empty()) throw structural_error("empty operator column");
  std::vector<int> tiers{static_cast<int>(psi.size())};
  for (const auto& d : deltas) {
    if (d.empty()) throw structural_error("operator with no rows");
    tiers.push_back(static_cast<int>(d.size()));
  }
  if (tiers.size() > 9) throw structural_error("tier depth exceeds 9");

  JetContext raw{n, r, tiers, max_order};
  auto ctx = std::make_shared<const JetContext>(raw);

  CompatComplexSpec spec;
  spec.ctx = ctx;
  for (const auto& s : psi) {
    auto p = JetPolynomial::parse(s, ctx);
    if (p.mentions_antifields())
      throw structural_error("operator column mentions antifields: " + s);
    spec.psi.push_back(p);
  }
  for (const auto& d : deltas) {
    TotalDiffOperator op;
    op.ctx = ctx;
    op.rows = static_cast<int>(d.size());
    op.cols = static_cast<int>(d[0].size());
    for (const auto& row : d) {
      if (row.size() != d[0].size())
        throw structural_error("ragged operator matrix");
      std::vector<OpEntry> parsed;
      for (const auto& cell : row) parsed.push_back(parse_op_entry(cell, ctx));
      op.entries.push_back(std::move(parsed));
    }
    spec.deltas.push_back(std::move(op));
  }
  check_shapes(spec);
  return spec;
}

CompatVerdict validate_compat(const CompatComplexSpec& spec) {
  check_shapes(spec);
  CompatVerdict verdict;
  if (!spec.deltas.empty()) {
    verdict.psi_residues = op_apply(spec.deltas[0], spec.psi);
    for (size_t i = 0; i < verdict.psi_residues.size(); ++i)
      if (!verdict.psi_residues[i].is_zero()) {
        verdict.ok = false;
        if (verdict.failure.empty())
          verdict.failure = "row " + std::to_string(i + 1) +
                            " does not annihilate the column: " +
                            verdict.psi_residues[i].str();
      }
  }
  for (size_t i = 0; i + 1 < spec.deltas.size(); ++i) {
    auto comp = op_compose(spec.deltas[i + 1], spec.deltas[i]);
    verdict.compose_residues.push_back(comp);
    if (!op_is_zero(comp)) {
      verdict.ok = false;
      if (verdict.failure.empty())
        verdict.failure = "operators " + std::to_string(i + 2) + " and " +
                          std::to_string(i + 1) + " do not compose to zero";
    }
  }
  return verdict;
}

CompatKtComplex build_compat_kt(const CompatComplexSpec& spec) {
  auto verdict = validate_compat(spec);
  if (!verdict.ok)
    throw structural_error("compatibility check failed: " + verdict.failure);

  auto ctx = spec.ctx;
  // value of the differential on each tier's order-0 antifield column
  std::vector<std::vector<JetPolynomial>> tier_base;
  tier_base.push_back(spec.psi);
  for (size_t j = 0; j < spec.deltas.size(); ++j) {
    std::vector<JetPolynomial> column;
    for (int c = 1; c <= ctx->tiers[j]; ++c) {
      JetVar v{JetKind::Anti, c, static_cast<int>(j) + 1,
               MultiIndex(ctx->n, 0)};
      column.push_back(JetPolynomial::var(ctx, v));
    }
    tier_base.push_back(op_apply(spec.deltas[j], column));
  }

  CompatKtComplex kt;
  kt.spec = spec;
  kt.delta.ctx = ctx;
  kt.delta.parity = 1;
  kt.delta.image = [ctx, tier_base](const JetVar& v) -> JetPolynomial {
    if (v.kind != JetKind::Anti) return JetPolynomial(ctx);
    return total_derivative(v.mi, tier_base[v.tier - 1][v.index - 1]);
  };

  if (auto w = kt_square_witness(kt.delta, 0))
    throw structural_error("differential does not square to zero at " +
                           w->generator.str() + ": " + w->value.str());
  return kt;
}

CompatComplexSpec derham_spec(int n, unsigned max_order) {
  switch (n) {
    case 1:
      return make_compat_spec(1, 1, {"u1_{1}"}, {}, max_order);
    case 2:
      return make_compat_spec(2, 1, {"u1_{1,0}", "u1_{0,1}"},
                              {{{"0 - D2", "D1"}}}, max_order);
    case 3:
      return make_compat_spec(
          3, 1, {"u1_{1,0,0}", "u1_{0,1,0}", "u1_{0,0,1}"},
          {{{"0", "0 - D3", "D2"},
            {"D3", "0", "0 - D1"},
            {"0 - D2", "D1", "0"}},
           {{"D1", "D2", "D3"}}},
          max_order);
    default:
      throw structural_error("builtin spec limited to base dimension <= 3");
  }
}

CompatComplexSpec compat_from_gauge(const GaugeTheory& theory) {
  CompatComplexSpec spec;
  spec.ctx = theory.ctx;
  for (int a = 1; a <= theory.ctx->r; ++a)
    spec.psi.push_back(euler_lagrange(theory.lagrangian, a));
  if (theory.noether.rows > 0) spec.deltas.push_back(theory.noether);
  check_shapes(spec);
  return spec;
}

namespace {

std::string block_gen_name(const JetVar& v) {
  std::string s = "v" + std::to_string(v.tier) + "_" + std::to_string(v.index);
  for (unsigned k : v.mi) s += "_" + std::to_string(k);
  return s;
}

}  // namespace

ResolutionState as_resolution_state(const JetDerivation& delta,
                                    unsigned order_bound) {
  auto ctx = delta.ctx;

  // antifield generators: everything up to order_bound, closed under the
  // antifields referenced by the images (the truncation keeps this finite)
  std::map<JetVar, JetPolynomial> images;
  std::deque<JetVar> pending;
  auto enqueue = [&](const JetVar& v) {
    if (!images.count(v)) {
      images.emplace(v, JetPolynomial(ctx));
      pending.push_back(v);
    }
  };
  for (int tier = 1; tier <= static_cast<int>(ctx->tiers.size()); ++tier)
    for (int comp = 1; comp <= ctx->tiers[tier - 1]; ++comp)
      for (const auto& mi : multi_indices_up_to(ctx->n, order_bound))
        enqueue(JetVar{JetKind::Anti, comp, tier, mi});
  while (!pending.empty()) {
    JetVar v = pending.front();
    pending.pop_front();
    auto img = derivation_apply(delta, JetPolynomial::var(ctx, v));
    for (const auto& [word, c] : img.terms())
      for (const auto& [w, e] : word)
        if (w.kind == JetKind::Anti) enqueue(w);
    images[v] = std::move(img);
  }

  // even jet coordinates seen in the images become ring variables
  std::map<JetVar, int> ring_index;
  for (const auto& [v, img] : images)
    for (const auto& [word, c] : img.terms())
      for (const auto& [w, e] : word)
        if (w.kind != JetKind::Anti) ring_index.emplace(w, 0);
  int nvars = 0;
  for (auto& [v, idx] : ring_index) idx = ++nvars;

  // weights bottom-up by tier: coefficient degree plus target weights
  std::map<JetVar, unsigned> weight;
  std::vector<JetVar> ordered;
  for (const auto& [v, img] : images) ordered.push_back(v);
  std::sort(ordered.begin(), ordered.end(),
            [](const JetVar& a, const JetVar& b) {
              return std::tie(a.tier, a.index, a.mi) <
                     std::tie(b.tier, b.index, b.mi);
            });
  for (const auto& v : ordered) {
    unsigned w = 1;
    for (const auto& [word, c] : images.at(v).terms()) {
      unsigned tw = 0;
      for (const auto& [jv, e] : word)
        tw += (jv.kind == JetKind::Anti
                   ? e * (weight.count(jv) ? weight.at(jv)
                                           : static_cast<unsigned>(jv.tier))
                   : e);
      w = std::max(w, tw);
    }
    weight[v] = w;
  }

  std::vector<GeneratorSpec> gens;
  for (const auto& v : ordered)
    gens.push_back(GeneratorSpec{block_gen_name(v),
                                 static_cast<unsigned>(v.tier), weight.at(v),
                                 static_cast<unsigned>(v.tier)});
  auto alg = make_algebra(QuotientRing(nvars), std::move(gens));

  std::map<JetVar, unsigned> gen_index;
  for (const auto& v : ordered)
    gen_index[v] = static_cast<unsigned>(alg->find(block_gen_name(v)));

  Derivation d;
  d.alg = alg;
  d.degree = -1;
  for (const auto& v : ordered) {
    GcaElement img(alg);
    for (const auto& [word, c] : images.at(v).terms()) {
      Exponents exps(static_cast<size_t>(nvars), 0);
      std::vector<std::pair<unsigned, unsigned>> odds;  // (gen index, exp)
      std::vector<int> parities;
      for (const auto& [jv, e] : word) {
        if (jv.kind == JetKind::Anti) {
          odds.emplace_back(gen_index.at(jv), e);
          parities.push_back(jv.tier % 2);
        } else {
          exps[static_cast<size_t>(ring_index.at(jv)) - 1] += e;
        }
      }
      // Koszul sign from sorting the generator word into canonical order
      int sign = 1;
      for (size_t i = 1; i < odds.size(); ++i)
        for (size_t j = i; j > 0 && odds[j - 1].first > odds[j].first; --j) {
          if (parities[j - 1] && parities[j]) sign = -sign;
          std::swap(odds[j - 1], odds[j]);
          std::swap(parities[j - 1], parities[j]);
        }
      GenWord gw(odds.begin(), odds.end());
      Rational coeff = sign < 0 ? Rational(-c) : c;
      img.add_term(gw, Polynomial::monomial(exps, coeff));
    }
    d.images[gen_index.at(v)] = std::move(img);
  }

  ResolutionState state;
  state.cx = ChainComplex{alg, std::move(d), GradingMode::Filtered};
  state.rounds = static_cast<unsigned>(ctx->tiers.size());
  return state;
}

ResolutionState as_resolution_state(const CompatKtComplex& kt,
                                    unsigned order_bound) {
  return as_resolution_state(kt.delta, order_bound);
}

ResolutionState as_resolution_state(const GaugeKtComplex& kt,
                                    unsigned order_bound) {
  return as_resolution_state(kt.delta, order_bound);
}

}  // namespace kt
