#include "kt/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace kt {

std::string ResolutionState::serialize() const {
  std::ostringstream out;
  const QuotientRing& R = cx.alg->ring();
  out << "ring: nvars=" << R.nvars() << " modulus=[";
  for (size_t i = 0; i < R.modulus().groebner().size(); ++i) {
    if (i) out << ", ";
    out << R.modulus().groebner()[i].str();
  }
  out << "]\n";
  out << "mode: "
      << (cx.mode == GradingMode::Graded ? "graded" : "filtered") << "\n";
  for (unsigned k = 1; k <= rounds; ++k) {
    out << "block " << k << ":";
    bool any = false;
    for (size_t i = 0; i < cx.alg->generators().size(); ++i) {
      const GeneratorSpec& g = cx.alg->gen(i);
      if (g.block != k) continue;
      any = true;
      out << "\n  " << g.str() << " -> ";
      auto it = cx.d.images.find(static_cast<unsigned>(i));
      out << (it == cx.d.images.end() ? "0" : it->second.str());
    }
    if (!any) out << " (empty)";
    out << "\n";
  }
  if (betti_cache) out << "window:\n" << betti_cache->tsv();
  return out.str();
}

std::string canonical_form(const ResolutionState& state) {
  const GradedAlgebra& alg = *state.cx.alg;
  size_t n = alg.generators().size();
  // Minimal block: 1 + max over generators mentioned in the image.
  std::vector<int> minimal(n, -1);
  auto compute = [&](auto&& self, size_t i) -> int {
    if (minimal[i] >= 0) return minimal[i];
    minimal[i] = 1;  // break cycles defensively; re-entry means invalid state
    int blk = 1;
    auto it = state.cx.d.images.find(static_cast<unsigned>(i));
    if (it != state.cx.d.images.end())
      for (const auto& [word, coeff] : it->second.terms())
        for (auto [g, e] : word) blk = std::max(blk, self(self, g) + 1);
    minimal[i] = blk;
    return blk;
  };
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) {
    order[i] = i;
    compute(compute, i);
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::tie(minimal[a], alg.gen(a).name) <
           std::tie(minimal[b], alg.gen(b).name);
  });
  std::ostringstream out;
  const QuotientRing& R = alg.ring();
  out << "ring: nvars=" << R.nvars() << " modulus=[";
  for (size_t i = 0; i < R.modulus().groebner().size(); ++i) {
    if (i) out << ", ";
    out << R.modulus().groebner()[i].str();
  }
  out << "]\n";
  out << "mode: "
      << (state.cx.mode == GradingMode::Graded ? "graded" : "filtered")
      << "\n";
  for (size_t i : order) {
    const GeneratorSpec& g = alg.gen(i);
    out << "block " << minimal[i] << " " << g.str() << " -> ";
    auto it = state.cx.d.images.find(static_cast<unsigned>(i));
    out << (it == state.cx.d.images.end() ? "0" : it->second.str()) << "\n";
  }
  return out.str();
}

ResolutionState koszul_complex(const QuotientRing& ring,
                               const std::vector<Polynomial>& E) {
  if (E.empty()) throw structural_error("koszul_complex: no equations");
  std::vector<Polynomial> nf;
  for (const Polynomial& e : E) {
    nf.push_back(ring.normal_form(e));
    if (nf.back().is_zero())
      throw structural_error("koszul_complex: zero equation rejected");
  }
  std::vector<GeneratorSpec> gens;
  GradingMode mode = GradingMode::Graded;
  for (size_t i = 0; i < nf.size(); ++i) {
    gens.push_back({"e" + std::to_string(i + 1), 1,
                    static_cast<unsigned>(nf[i].degree()), 1});
    if (!nf[i].is_homogeneous()) mode = GradingMode::Filtered;
  }
  auto alg = make_algebra(ring, gens);
  Derivation d{alg, -1, {}};
  for (size_t i = 0; i < nf.size(); ++i)
    d.images[static_cast<unsigned>(i)] = GcaElement::scalar(alg, nf[i]);
  if (auto w = derivation_square_witness(d))
    throw structural_error("koszul differential fails d^2=0 on " +
                           w->generator);
  return {{alg, std::move(d), mode}, 1, std::nullopt};
}

std::string RegularityVerdict::str() const {
  std::string tag = mode == GradingMode::Filtered ? " [filtered]" : "";
  if (regular)
    return "REGULAR-UP-TO-BOUND(" + std::to_string(bound) + ")" + tag;
  return "NOT-REGULAR(" + witness.str() + ")" + tag;
}

RegularityVerdict is_regular_sequence(const QuotientRing& ring,
                                      const std::vector<Polynomial>& E,
                                      unsigned weight_bound,
                                      const HomologyCaps& caps) {
  ResolutionState st = koszul_complex(ring, E);
  RegularityVerdict v;
  v.bound = weight_bound;
  v.mode = st.cx.mode;
  if (st.cx.mode == GradingMode::Filtered) {
    // One filtration piece covers all smaller weights.
    auto reps = cycle_representatives(st.cx, 1, weight_bound, caps);
    if (!reps.empty()) {
      v.witness = reps.front();
      return v;
    }
    v.regular = true;
    return v;
  }
  for (unsigned w = 0; w <= weight_bound; ++w) {
    if (betti(st.cx, 1, w, caps) > 0) {
      v.witness = cycle_representatives(st.cx, 1, w, caps).front();
      return v;
    }
  }
  v.regular = true;
  return v;
}

std::optional<std::vector<std::vector<Polynomial>>> relation_is_trivial(
    const QuotientRing& ring, const std::vector<Polynomial>& rho,
    const std::vector<Polynomial>& E, const HomologyCaps& caps) {
  if (rho.size() != E.size())
    throw structural_error("relation length does not match equation count");
  size_t r = E.size();
  Polynomial sum(ring.nvars());
  std::vector<Polynomial> rnf;
  for (size_t a = 0; a < r; ++a) {
    rnf.push_back(ring.normal_form(rho[a]));
    sum = sum + rnf[a] * E[a];
  }
  if (!ring.normal_form(sum).is_zero())
    throw structural_error("relation_is_trivial: rho is not a relation");

  ResolutionState st = koszul_complex(ring, E);
  GcaElement z(st.cx.alg);
  for (size_t a = 0; a < r; ++a)
    z = z + gca_mul(GcaElement::scalar(st.cx.alg, rnf[a]),
                    GcaElement::generator(st.cx.alg, static_cast<unsigned>(a)));

  std::vector<std::vector<Polynomial>> theta(
      r, std::vector<Polynomial>(r, Polynomial(ring.nvars())));
  if (z.is_zero()) return theta;

  // Weight-homogeneous pieces are cycles individually in graded mode.
  std::vector<GcaElement> pieces;
  if (st.cx.mode == GradingMode::Graded) {
    std::map<int, GcaElement> by_weight;
    for (const auto& [word, poly] : z.terms()) {
      for (const auto& [e, c] : poly.terms()) {
        int w = static_cast<int>(total_degree(e) +
                                 word_weight(*st.cx.alg, word));
        auto [it, fresh] = by_weight.try_emplace(w, st.cx.alg);
        it->second.add_term(word, Polynomial::monomial(e, c));
      }
    }
    for (auto& [w, piece] : by_weight) pieces.push_back(std::move(piece));
  } else {
    pieces.push_back(z);
  }

  GcaElement c2(st.cx.alg);
  for (const GcaElement& piece : pieces) {
    auto pre = boundary_preimage(st.cx, piece, caps);
    if (!pre) return std::nullopt;
    c2 = c2 + *pre;
  }
  // c2 = sum_{a<b} c^{ab} e_a e_b gives rho = Theta E with
  // Theta_{ab} = -c^{ab} (a<b), Theta_{ab} = c^{ba} (a>b).
  for (const auto& [word, poly] : c2.terms()) {
    if (word.size() != 2)
      throw structural_error("unexpected 2-chain shape in trivial relation");
    unsigned a = word[0].first, b = word[1].first;
    theta[a][b] = theta[a][b] - poly;
    theta[b][a] = theta[b][a] + poly;
  }
  for (size_t a = 0; a < r; ++a) {
    Polynomial check(ring.nvars());
    for (size_t b = 0; b < r; ++b) check = check + theta[a][b] * E[b];
    if (!ring.normal_form(check - rnf[a]).is_zero())
      throw structural_error("extracted skew matrix fails rho = Theta E");
  }
  return theta;
}

bool relation_is_weakly_trivial(const std::vector<Polynomial>& rho,
                                const Ideal& I) {
  for (const Polynomial& r : rho)
    if (!ideal_member(r, I)) return false;
  return true;
}

ResolutionState tate_step(const ResolutionState& state, int p,
                          unsigned weight_bound, const HomologyCaps& caps) {
  // Kill order: increasing weight, then echelon order inside a weight.
  std::vector<std::pair<unsigned, GcaElement>> kills;
  if (state.cx.mode == GradingMode::Graded) {
    for (unsigned w = 0; w <= weight_bound; ++w)
      for (const GcaElement& rep : cycle_representatives(state.cx, p, w, caps))
        kills.emplace_back(w, rep);
  } else {
    for (const GcaElement& rep :
         cycle_representatives(state.cx, p, weight_bound, caps))
      kills.emplace_back(static_cast<unsigned>(std::max(rep.weight(), 0)),
                         rep);
  }
  if (kills.empty()) return state;  // identity step

  unsigned block = state.rounds + 1;
  std::vector<GeneratorSpec> extra;
  for (size_t i = 0; i < kills.size(); ++i)
    extra.push_back({"t" + std::to_string(block) + "_" + std::to_string(i + 1),
                     static_cast<unsigned>(p + 1), kills[i].first, block});
  AlgebraPtr bigger = state.cx.alg->extended(extra);

  Derivation d{bigger, -1, {}};
  for (const auto& [g, img] : state.cx.d.images)
    d.images[g] = img.promoted(bigger);
  for (size_t i = 0; i < kills.size(); ++i) {
    int idx = bigger->find(extra[i].name);
    d.images[static_cast<unsigned>(idx)] = kills[i].second.promoted(bigger);
  }
  if (auto w = derivation_square_witness(d))
    throw structural_error("tate_step differential fails d^2=0 on " +
                           w->generator);
  return {{bigger, std::move(d), state.cx.mode}, block, std::nullopt};
}

ResolutionState tate_resolve(const QuotientRing& ring, const Ideal& I,
                             int degree_bound, unsigned weight_bound,
                             const HomologyCaps& caps) {
  std::vector<Polynomial> gens;
  for (const Polynomial& g : I.generators()) {
    Polynomial nf = ring.normal_form(g);
    if (!nf.is_zero()) gens.push_back(nf);
  }
  ResolutionState st = koszul_complex(ring, gens);
  int done = 0;
  try {
    for (int p = 1; p <= degree_bound; ++p) {
      st = tate_step(st, p, weight_bound, caps);
      done = p;
    }
  } catch (const cap_exceeded&) {
    // Partial state: certify only the degrees completed so far.
  }
  unsigned w = weight_bound;
  while (true) {
    try {
      st.betti_cache = betti_window(st.cx, done, w, caps);
      break;
    } catch (const cap_exceeded&) {
      if (w == 0) break;
      --w;
    }
  }
  return st;
}

ResolutionState tate_two_step(int nvars, const std::vector<Polynomial>& P,
                              const std::vector<Polynomial>& J,
                              const std::vector<std::vector<Polynomial>>& s) {
  if (J.empty()) throw structural_error("tate_two_step: no equations J");
  if (s.size() != P.size())
    throw structural_error("tate_two_step: s rows must match P");
  for (const auto& row : s)
    if (row.size() != J.size())
      throw structural_error("tate_two_step: s columns must match J");
  for (size_t b = 0; b < P.size(); ++b) {
    Polynomial sum(nvars);
    for (size_t a = 0; a < J.size(); ++a) sum = sum + s[b][a] * J[a];
    if (!(sum == P[b]))
      throw structural_error("tate_two_step: P_" + std::to_string(b + 1) +
                             " != sum_a s_ba J_a");
  }
  QuotientRing R{Ideal(nvars, P)};
  std::vector<GeneratorSpec> gens;
  for (size_t a = 0; a < J.size(); ++a)
    gens.push_back({"e" + std::to_string(a + 1), 1,
                    static_cast<unsigned>(std::max(J[a].degree(), 0)), 1});
  for (size_t b = 0; b < P.size(); ++b) {
    int w = 0;
    for (size_t a = 0; a < J.size(); ++a)
      if (!s[b][a].is_zero())
        w = std::max(w, s[b][a].degree() + static_cast<int>(gens[a].weight));
    gens.push_back({"f" + std::to_string(b + 1), 2, static_cast<unsigned>(w),
                    2});
  }
  auto alg = make_algebra(R, gens);
  Derivation d{alg, -1, {}};
  GradingMode mode = GradingMode::Graded;
  for (size_t a = 0; a < J.size(); ++a) {
    int idx = alg->find("e" + std::to_string(a + 1));
    d.images[static_cast<unsigned>(idx)] =
        GcaElement::scalar(alg, R.normal_form(J[a]));
    if (!J[a].is_homogeneous()) mode = GradingMode::Filtered;
  }
  for (size_t b = 0; b < P.size(); ++b) {
    GcaElement img(alg);
    for (size_t a = 0; a < J.size(); ++a) {
      int ea = alg->find("e" + std::to_string(a + 1));
      img = img + gca_mul(GcaElement::scalar(alg, s[b][a]),
                          GcaElement::generator(alg, ea));
    }
    int idx = alg->find("f" + std::to_string(b + 1));
    d.images[static_cast<unsigned>(idx)] = img;
    if (!img.is_zero() && !img.weight_homogeneous())
      mode = GradingMode::Filtered;
  }
  if (auto w = derivation_square_witness(d))
    throw structural_error("tate_two_step differential fails d^2=0 on " +
                           w->generator);
  return {{alg, std::move(d), mode}, 2, std::nullopt};
}

ExtendOutcome sullivan_extend(const ResolutionState& t,
                              const std::vector<NewGenerator>& gens) {
  ExtendOutcome out;
  unsigned block = t.rounds + 1;
  std::vector<GeneratorSpec> extra;
  GradingMode mode = t.cx.mode;
  for (const NewGenerator& g : gens) {
    GcaElement img = g.image.algebra() ? g.image.promoted(t.cx.alg)
                                       : GcaElement(t.cx.alg);
    if (!img.is_zero() &&
        img.degree() != static_cast<int>(g.degree) - 1)
      throw structural_error("sullivan_extend: image of " + g.name +
                             " has wrong degree");
    GcaElement d_img = derivation_apply(t.cx.d, img);
    if (!d_img.is_zero()) {
      out.rejected_name = g.name;
      out.witness = d_img;
      return out;
    }
    unsigned w = static_cast<unsigned>(std::max(img.weight(), 0));
    if (!img.is_zero() && !img.weight_homogeneous())
      mode = GradingMode::Filtered;
    extra.push_back({g.name, g.degree, w, block});
  }
  AlgebraPtr bigger = t.cx.alg->extended(extra);
  Derivation d{bigger, -1, {}};
  for (const auto& [g, img] : t.cx.d.images)
    d.images[g] = img.promoted(bigger);
  for (const NewGenerator& g : gens) {
    int idx = bigger->find(g.name);
    GcaElement img = g.image.algebra() ? g.image.promoted(bigger)
                                       : GcaElement(bigger);
    d.images[static_cast<unsigned>(idx)] = img;
  }
  out.state = ResolutionState{{bigger, std::move(d), mode}, block,
                              std::nullopt};
  return out;
}

GcaElement morphism_apply(const GcaMorphism& q, const GcaElement& a) {
  if (q.src->ring().nvars() != q.dst->ring().nvars())
    throw structural_error("morphism requires matching ambient variables");
  GcaElement r(q.dst);
  for (const auto& [word, coeff] : a.terms()) {
    GcaElement term = GcaElement::scalar(q.dst, coeff);
    for (auto [g, e] : word)
      for (unsigned k = 0; k < e; ++k)
        term = gca_mul(term, q.images.at(g));
    r = r + term;
  }
  return r;
}

MorphismOutcome sullivan_morphism(const ResolutionState& src,
                                  const ResolutionState& dst,
                                  const std::vector<GcaElement>& images) {
  MorphismOutcome out;
  if (images.size() != src.cx.alg->generators().size())
    throw structural_error("one image per source generator required");
  GcaMorphism q{src.cx.alg, dst.cx.alg, images};
  for (size_t g = 0; g < images.size(); ++g) {
    GcaElement lhs = derivation_apply(dst.cx.d, images[g]);
    GcaElement dg = derivation_apply(
        src.cx.d, GcaElement::generator(src.cx.alg, static_cast<unsigned>(g)));
    GcaElement rhs = morphism_apply(q, dg);
    GcaElement diff = lhs - rhs;
    if (!diff.is_zero()) {
      out.rejected_name = src.cx.alg->gen(g).name;
      out.witness = diff;
      return out;
    }
  }
  out.morphism = std::move(q);
  return out;
}

SullivanReport verify_sullivan_type(const ResolutionState& state) {
  SullivanReport rep;
  for (unsigned k = 1; k <= state.rounds; ++k) {
    SullivanReport::BlockEntry entry{k, true, ""};
    for (size_t i = 0; i < state.cx.alg->generators().size(); ++i) {
      const GeneratorSpec& g = state.cx.alg->gen(i);
      if (g.block != k) continue;
      auto it = state.cx.d.images.find(static_cast<unsigned>(i));
      if (it == state.cx.d.images.end()) continue;
      for (const auto& [word, coeff] : it->second.terms())
        for (auto [gi, e] : word)
          if (state.cx.alg->gen(gi).block >= k) {
            entry.ok = false;
            entry.offender = g.name;
          }
    }
    if (!entry.ok) rep.ok = false;
    rep.blocks.push_back(entry);
  }
  return rep;
}

}  // namespace kt
