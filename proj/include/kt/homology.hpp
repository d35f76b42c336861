#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kt/gca.hpp"

namespace kt {

/// Graded: weight-homogeneous differential, slices are exact weight pieces.
/// Filtered: inhomogeneous differential; a "slice" at w is the whole
/// filtration piece weight <= w and homology claims are one-sided.
enum class GradingMode { Graded, Filtered };

/// A graded-commutative algebra with a square-zero degree -1 differential.
struct ChainComplex {
  AlgebraPtr alg;
  Derivation d;
  GradingMode mode = GradingMode::Graded;
};

struct HomologyCaps {
  size_t max_slice_dim = 20000;
  unsigned max_weight = 16;
};

/// Sparse vector over Q, keyed by basis index.
using SparseVec = std::map<int, Rational>;

/// Incremental exact Gaussian elimination with augmentation. Stored rows are
/// fully reduced against each other and normalized to pivot coefficient 1.
class Eliminator {
 public:
  /// Eliminates every pivot-indexed entry of v; combo tracks the applied
  /// combination of previously inserted vectors.
  void reduce(SparseVec& v, SparseVec* combo = nullptr) const;
  /// Inserts a reduced nonzero vector as a new pivot row.
  void insert(SparseVec v, SparseVec combo = {});
  size_t rank() const { return rows_.size(); }
  /// Rows in reduced echelon form, ascending pivot index.
  std::vector<SparseVec> rref_rows() const;

 private:
  std::map<int, std::pair<SparseVec, SparseVec>> rows_;  // pivot -> (vec, combo)
};

/// One basis monomial of a slice: ring monomial times generator word.
struct SliceMonomial {
  Exponents ring_exps;
  GenWord word;
  bool operator==(const SliceMonomial&) const = default;
  auto operator<=>(const SliceMonomial&) const = default;
};

/// Sparse matrix stored by columns.
struct QMatrix {
  int rows = 0;
  std::vector<SparseVec> cols;
};

/// Finite piece of the complex at homological degree n and weight w, with the
/// differential matrices into and out of it.
struct WeightSlice {
  int n = 0;
  unsigned w = 0;
  std::vector<SliceMonomial> basis;        // this slice
  std::vector<SliceMonomial> below_basis;  // degree n-1
  std::vector<SliceMonomial> above_basis;  // degree n+1
  QMatrix out_matrix;  // d: (n,w) -> (n-1,w)
  QMatrix in_matrix;   // d: (n+1,w) -> (n,w)
};

std::vector<SliceMonomial> slice_monomials(const ChainComplex& cx, int n,
                                           unsigned w,
                                           const HomologyCaps& caps = {});

WeightSlice slice_basis(const ChainComplex& cx, int n, unsigned w,
                        const HomologyCaps& caps = {});

unsigned betti(const ChainComplex& cx, int n, unsigned w,
               const HomologyCaps& caps = {});

/// Reduced-echelon representatives of a homology basis at (n, w).
std::vector<GcaElement> cycle_representatives(const ChainComplex& cx, int n,
                                              unsigned w,
                                              const HomologyCaps& caps = {});

/// Some c with d(c) = z inside the certified window, if one exists.
/// z must be a cycle (contract violation otherwise) and, in graded mode,
/// weight-homogeneous.
std::optional<GcaElement> boundary_preimage(const ChainComplex& cx,
                                            const GcaElement& z,
                                            const HomologyCaps& caps = {});

GcaElement element_from_coords(const ChainComplex& cx,
                               const std::vector<SliceMonomial>& basis,
                               const SparseVec& coords);

/// Betti table over a rectangle of (degree, weight) pairs.
struct BettiWindow {
  int max_n = 0;
  unsigned max_w = 0;
  GradingMode mode = GradingMode::Graded;
  std::map<std::pair<int, unsigned>, unsigned> dims;

  std::string tsv() const;
};

BettiWindow betti_window(const ChainComplex& cx, int max_n, unsigned max_w,
                         const HomologyCaps& caps = {});

}  // namespace kt
