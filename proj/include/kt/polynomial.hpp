#pragma once

#include <map>
#include <string>
#include <vector>

#include "kt/rational.hpp"

namespace kt {

/// Exponent vector of a monomial; length = variable count of the ring.
using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e);

/// Graded reverse lexicographic order, largest first.
struct GrevlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial over Q with variables x1..xn.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GrevlexGreater>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int index, unsigned exp = 1);
  static Polynomial monomial(const Exponents& e, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  /// Adds c*x^e, erasing the term if the coefficient cancels.
  void add_term(const Exponents& e, const Rational& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  bool is_constant() const;

  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;

  std::string str() const;
  static Polynomial parse(const std::string& text, int nvars);

 private:
  void check_compatible(const Polynomial& o) const;

  int nvars_;
  TermMap terms_;
};

bool divides(const Exponents& divisor, const Exponents& dividend);
Exponents exp_sub(const Exponents& a, const Exponents& b);
Exponents exp_add(const Exponents& a, const Exponents& b);
Exponents exp_lcm(const Exponents& a, const Exponents& b);

}  // namespace kt
