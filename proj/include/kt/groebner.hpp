#pragma once

#include <vector>

#include "kt/polynomial.hpp"

namespace kt {

/// Reduced Groebner basis (grevlex) via Buchberger with the Gebauer-Moeller
/// pair criteria. Zero generators are dropped; {1} collapses to {1}.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens);

/// Remainder of p on division by basis; fully reduced, idempotent.
Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& basis);

/// Ideal of a fixed polynomial ring with a cached reduced Groebner basis.
class Ideal {
 public:
  Ideal(int nvars, std::vector<Polynomial> gens);

  int nvars() const { return nvars_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<Polynomial>& groebner() const;
  bool is_zero() const { return groebner().empty(); }
  bool contains_one() const;

 private:
  int nvars_;
  std::vector<Polynomial> gens_;
  mutable std::vector<Polynomial> gb_;
  mutable bool gb_done_ = false;
};

bool ideal_member(const Polynomial& p, const Ideal& ideal);

/// Polynomial ring modulo an ideal; the zero ideal gives the free ring.
class QuotientRing {
 public:
  explicit QuotientRing(int nvars)
      : modulus_(nvars, {}) {}
  explicit QuotientRing(Ideal modulus) : modulus_(std::move(modulus)) {}

  int nvars() const { return modulus_.nvars(); }
  const Ideal& modulus() const { return modulus_; }
  bool is_trivial() const { return modulus_.contains_one(); }

  Polynomial normal_form(const Polynomial& p) const;

  /// Standard monomials (basis of the quotient) of total degree w.
  /// Throws cap_exceeded when the count would pass `cap`.
  std::vector<Exponents> standard_monomials(unsigned w, size_t cap = 20000) const;

 private:
  Ideal modulus_;
};

}  // namespace kt
