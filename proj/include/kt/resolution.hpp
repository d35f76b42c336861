#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kt/homology.hpp"

namespace kt {

/// A graded-commutative algebra with differential built by staged generator
/// adjunction. Block k generators map into the subalgebra on blocks < k.
struct ResolutionState {
  ChainComplex cx;
  unsigned rounds = 0;  // highest block in use
  std::optional<BettiWindow> betti_cache;

  /// Structured text form: ring, blocks, images, certified window.
  std::string serialize() const;
};

/// Block-insensitive canonical text form: generators are renumbered into the
/// lowest blocks their images allow, so states that differ only in how the
/// same generators were staged compare equal.
std::string canonical_form(const ResolutionState& state);

/// Koszul complex of equations E over the ring: odd degree-1 generators e_a
/// with d(e_a) = E_a. Zero equations are rejected.
ResolutionState koszul_complex(const QuotientRing& ring,
                               const std::vector<Polynomial>& E);

struct RegularityVerdict {
  bool regular = false;
  unsigned bound = 0;
  GradingMode mode = GradingMode::Graded;
  GcaElement witness;       // nonzero H1 class when not regular
  std::string str() const;  // REGULAR-UP-TO-BOUND(w) / NOT-REGULAR(...)
};

RegularityVerdict is_regular_sequence(const QuotientRing& ring,
                                      const std::vector<Polynomial>& E,
                                      unsigned weight_bound,
                                      const HomologyCaps& caps = {});

/// For a relation sum rho_a E_a = 0: the skew matrix Theta with
/// rho = Theta * E when the 1-cycle sum rho_a e_a is a boundary.
std::optional<std::vector<std::vector<Polynomial>>> relation_is_trivial(
    const QuotientRing& ring, const std::vector<Polynomial>& rho,
    const std::vector<Polynomial>& E, const HomologyCaps& caps = {});

/// True iff every coefficient of the relation lies in I.
bool relation_is_weakly_trivial(const std::vector<Polynomial>& rho,
                                const Ideal& I);

/// Adjoins degree p+1 generators killing every H_p class of weight <= bound.
/// Returns the state unchanged when H_p already vanishes there.
ResolutionState tate_step(const ResolutionState& state, int p,
                          unsigned weight_bound,
                          const HomologyCaps& caps = {});

/// Koszul complex of I's generators followed by tate_step for p = 1..P,
/// with the certified Betti window cached. A cap hit mid-run returns the
/// partial state with the sub-window certified so far.
ResolutionState tate_resolve(const QuotientRing& ring, const Ideal& I,
                             int degree_bound, unsigned weight_bound,
                             const HomologyCaps& caps = {});

/// Two-step resolution over R = S/(P): e_a (deg 1) with d(e_a) = class of
/// J_a, f_b (deg 2) with d(f_b) = sum_a s[b][a] e_a. Requires the symbolic
/// identity P_b = sum_a s[b][a] J_a in S. Regularity of (P) and (J) is the
/// caller's assertion.
ResolutionState tate_two_step(int nvars, const std::vector<Polynomial>& P,
                              const std::vector<Polynomial>& J,
                              const std::vector<std::vector<Polynomial>>& s);

struct NewGenerator {
  std::string name;
  unsigned degree = 1;
  GcaElement image;  // must be a cycle of degree - 1
};

struct ExtendOutcome {
  std::optional<ResolutionState> state;
  std::string rejected_name;  // set on failure
  GcaElement witness;         // nonzero d(image) of the rejected generator
  bool ok() const { return state.has_value(); }
};

ExtendOutcome sullivan_extend(const ResolutionState& t,
                              const std::vector<NewGenerator>& gens);

/// Algebra morphism given by generator images; ring coefficients pass
/// through the target's normal form (same ambient variables).
struct GcaMorphism {
  AlgebraPtr src;
  AlgebraPtr dst;
  std::vector<GcaElement> images;  // one per src generator
};

GcaElement morphism_apply(const GcaMorphism& q, const GcaElement& a);

struct MorphismOutcome {
  std::optional<GcaMorphism> morphism;
  std::string rejected_name;
  GcaElement witness;  // d_B(q g) - q(d g) for the failing generator
  bool ok() const { return morphism.has_value(); }
};

/// Builds the chain map src -> dst from generator images, verifying
/// d_B(q(g)) = q(d(g)) on every generator.
MorphismOutcome sullivan_morphism(const ResolutionState& src,
                                  const ResolutionState& dst,
                                  const std::vector<GcaElement>& images);

struct SullivanReport {
  bool ok = true;
  struct BlockEntry {
    unsigned block;
    bool ok;
    std::string offender;  // generator whose image reaches its own block
  };
  std::vector<BlockEntry> blocks;
};

/// Checks the lowering condition: every generator image lives in the
/// subalgebra on strictly earlier blocks.
SullivanReport verify_sullivan_type(const ResolutionState& state);

}  // namespace kt
