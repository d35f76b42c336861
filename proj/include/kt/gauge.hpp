#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kt/jet.hpp"

namespace kt {

/// Lagrangian gauge theory data: base dimension and field count live in the
/// context (antifield tiers {r, K}), plus the Noether operator matrix (K x r)
/// whose rows annihilate the Euler-Lagrange column.
struct GaugeTheory {
  JetCtxPtr ctx;
  JetPolynomial lagrangian;
  TotalDiffOperator noether;
};

/// Context with antifield tier multiplicities {r} or {r, K}.
JetCtxPtr make_gauge_ctx(int n, int r, int noether_rows, unsigned max_order = 8);

struct NoetherVerdict {
  bool ok = true;
  std::vector<JetPolynomial> residues;  // one per row; nonzero = witness
};

/// Row-by-row check that the Noether operators annihilate the EL column,
/// plus the D_x-extended identities up to check_depth.
NoetherVerdict check_noether(const GaugeTheory& theory,
                             unsigned check_depth = 1);

/// The Koszul-Tate differential: tier-1 antifields map to prolonged
/// Euler-Lagrange expressions, tier-2 antifields to the Noether rows applied
/// (with extended total derivatives) to the tier-1 antifields.
struct GaugeKtComplex {
  GaugeTheory theory;
  std::vector<JetPolynomial> el;  // Euler-Lagrange column
  JetDerivation delta;
};

GaugeKtComplex build_gauge_kt(const GaugeTheory& theory);

struct KtSquareWitness {
  JetVar generator;
  JetPolynomial value;  // nonzero delta(delta(generator))
};

/// delta^2 on every antifield generator with multi-index order <= depth.
std::optional<KtSquareWitness> kt_square_witness(const JetDerivation& delta,
                                                 unsigned depth);
std::optional<KtSquareWitness> kt_square_witness(const GaugeKtComplex& kt,
                                                 unsigned depth);

struct KtH0Report {
  bool boundaries_in_shell_ideal = true;
  bool shell_generators_are_boundaries = true;
  size_t generators_checked = 0;
  size_t samples_checked = 0;
  std::string failure;  // description of first failure, if any
  bool ok() const {
    return boundaries_in_shell_ideal && shell_generators_are_boundaries;
  }
};

/// Two-sided comparison of degree-0 boundaries with the shell ideal
/// (generated by all D^alpha applied to the EL column, |alpha| <= bound)
/// inside the truncated polynomial model.
KtH0Report kt_h0_report(const GaugeKtComplex& kt, unsigned order_bound,
                        unsigned samples = 25);

/// Samples operators D = (base polynomial) * D_x^beta and checks
/// delta(D . g) = D . delta(g) for g among the antifield generators.
bool verify_kt_dlinearity(const GaugeKtComplex& kt, int samples,
                          unsigned seed = 12345);

}  // namespace kt
