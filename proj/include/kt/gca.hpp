#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kt/groebner.hpp"

namespace kt {

/// Homogeneous algebra generator. Parity is degree mod 2; odd generators
/// square to zero. `block` records the adjunction round that introduced it.
struct GeneratorSpec {
  std::string name;
  unsigned degree = 1;
  unsigned weight = 0;
  unsigned block = 0;

  bool odd() const { return degree % 2 == 1; }
  std::string str() const;
  bool operator==(const GeneratorSpec&) const = default;
};

/// Free graded-commutative algebra over a quotient ring, generators kept in
/// canonical (block, name) order. Immutable; extension copies the prefix so
/// monomial indices of the old algebra stay valid in the new one.
class GradedAlgebra {
 public:
  GradedAlgebra(QuotientRing ring, std::vector<GeneratorSpec> gens);

  const QuotientRing& ring() const { return ring_; }
  const std::vector<GeneratorSpec>& generators() const { return gens_; }
  const GeneratorSpec& gen(size_t i) const { return gens_.at(i); }
  int find(const std::string& name) const;  // -1 when absent

  std::shared_ptr<const GradedAlgebra> extended(
      std::vector<GeneratorSpec> extra) const;

  /// True when `other` lists this algebra's generators as a prefix over the
  /// same coefficient ring.
  bool prefix_of(const GradedAlgebra& other) const;

 private:
  QuotientRing ring_;
  std::vector<GeneratorSpec> gens_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

AlgebraPtr make_algebra(QuotientRing ring, std::vector<GeneratorSpec> gens);

/// Sorted (generator index, exponent) word; odd exponents are exactly 1.
using GenWord = std::vector<std::pair<unsigned, unsigned>>;

unsigned word_degree(const GradedAlgebra& alg, const GenWord& w);
unsigned word_weight(const GradedAlgebra& alg, const GenWord& w);

/// Element of a graded-commutative algebra: sum of ring coefficients times
/// canonical generator words. Coefficients are held in ring normal form.
class GcaElement {
 public:
  GcaElement() = default;
  explicit GcaElement(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static GcaElement scalar(AlgebraPtr alg, const Polynomial& c);
  static GcaElement generator(AlgebraPtr alg, unsigned index);

  const AlgebraPtr& algebra() const { return alg_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<GenWord, Polynomial>& terms() const { return terms_; }

  /// Adds c * word with the coefficient reduced to ring normal form.
  void add_term(const GenWord& word, const Polynomial& c);

  GcaElement operator+(const GcaElement& o) const;
  GcaElement operator-(const GcaElement& o) const;
  GcaElement operator-() const;
  GcaElement operator*(const Rational& c) const;
  bool operator==(const GcaElement& o) const;
  bool operator!=(const GcaElement& o) const { return !(*this == o); }

  /// Homological degree when all words agree; -1 for zero or mixed.
  int degree() const;
  /// Weight (coefficient degree + generator weights) when homogeneous,
  /// otherwise the max over terms; -1 for zero.
  int weight() const;
  bool weight_homogeneous() const;

  /// Same element viewed in an algebra that extends this one.
  GcaElement promoted(const AlgebraPtr& bigger) const;

  std::string str() const;

 private:
  AlgebraPtr alg_;
  std::map<GenWord, Polynomial> terms_;
};

/// Graded-commutative product with Koszul signs. Algebras must match or one
/// must extend the other; the result lives in the larger algebra.
GcaElement gca_mul(const GcaElement& a, const GcaElement& b);

/// Degree -1 derivation given by generator images; zero on ring coefficients
/// unless a coefficient hook is supplied.
struct Derivation {
  AlgebraPtr alg;
  int degree = -1;
  std::map<unsigned, GcaElement> images;
  std::function<GcaElement(const Polynomial&)> coeff_hook;  // may be empty
};

GcaElement derivation_apply(const Derivation& d, const GcaElement& a);

struct SquareWitness {
  std::string generator;
  GcaElement value;  // nonzero d(d(g))
};

/// Checks d(d(g)) = 0 for every generator; by Leibniz this certifies d^2 = 0.
std::optional<SquareWitness> derivation_square_witness(const Derivation& d);

}  // namespace kt
