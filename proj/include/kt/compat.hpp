#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kt/gauge.hpp"
#include "kt/resolution.hpp"

namespace kt {

/// Finite compatibility complex: an operator column psi (rank r1) followed by
/// total-differential operators Delta_1, Delta_2, ... with chaining shapes
/// (r2 x r1, r3 x r2, ...). The context's antifield tiers mirror the ranks.
struct CompatComplexSpec {
  JetCtxPtr ctx;
  std::vector<JetPolynomial> psi;
  std::vector<TotalDiffOperator> deltas;
};

/// Builds the spec from textual entries; the context (with tiers
/// {r1, r2, ...}) is derived from the shapes. Tier count is capped at 9.
CompatComplexSpec make_compat_spec(
    int n, int r, const std::vector<std::string>& psi,
    const std::vector<std::vector<std::vector<std::string>>>& deltas,
    unsigned max_order = 8);

struct CompatVerdict {
  bool ok = true;
  std::vector<JetPolynomial> psi_residues;        // Delta_1 applied to psi
  std::vector<TotalDiffOperator> compose_residues;  // Delta_{i+1} o Delta_i
  std::string failure;  // first nonzero residue, described
};

/// Symbolic check of both complex conditions; shape mismatches throw.
CompatVerdict validate_compat(const CompatComplexSpec& spec);

/// Koszul-Tate differential over the spec: tier-1 antifields map to the
/// prolonged psi components, tier j+1 to Delta_j applied (with extended total
/// derivatives) to tier j.
struct CompatKtComplex {
  CompatComplexSpec spec;
  JetDerivation delta;
};

/// Validates the spec, builds the differential, and certifies delta^2 = 0 on
/// the order-0 generators; throws structural_error with a witness otherwise.
CompatKtComplex build_compat_kt(const CompatComplexSpec& spec);

/// Built-in de Rham spec on n <= 3 base dimensions: psi = gradient of a
/// single field, then curl and divergence as applicable.
CompatComplexSpec derham_spec(int n, unsigned max_order = 8);

/// A gauge theory viewed as a depth-2 compatibility spec: psi = EL column,
/// Delta_1 = the Noether matrix.
CompatComplexSpec compat_from_gauge(const GaugeTheory& theory);

/// Finite staged-algebra snapshot of a jet Koszul-Tate complex: jet
/// coordinates seen in the images become polynomial ring variables,
/// antifields of multi-index order <= order_bound become generators with
/// block = tier. Filtered grading; claims are one-sided by construction.
ResolutionState as_resolution_state(const JetDerivation& delta,
                                    unsigned order_bound);
ResolutionState as_resolution_state(const CompatKtComplex& kt,
                                    unsigned order_bound);
ResolutionState as_resolution_state(const GaugeKtComplex& kt,
                                    unsigned order_bound);

}  // namespace kt
