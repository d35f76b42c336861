#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kt/rational.hpp"

namespace kt {

/// Fixed-for-the-session shape of the truncated jet space.
struct JetContext {
  int n = 1;                // base dimension
  int r = 1;                // field count
  std::vector<int> tiers;   // antifield multiplicities; tiers[j-1] = rank of tier j
  unsigned max_order = 8;   // jet truncation; exceeding it fails loudly
};

using JetCtxPtr = std::shared_ptr<const JetContext>;

using MultiIndex = std::vector<unsigned>;  // length n

unsigned mi_order(const MultiIndex& mi);

/// All multi-indices of length n with |mi| <= bound, lexicographic.
std::vector<MultiIndex> multi_indices_up_to(int n, unsigned bound);

enum class JetKind { Base, Field, Anti };

/// Coordinate on the truncated jet space: x^i, u^a_alpha, or a tier-t
/// antifield. Antifield parity is tier mod 2.
struct JetVar {
  JetKind kind = JetKind::Base;
  int index = 1;   // base index i, field index a, or antifield component
  int tier = 0;    // antifields only, >= 1
  MultiIndex mi;   // empty for Base

  int parity() const { return kind == JetKind::Anti ? tier % 2 : 0; }
  int hdegree() const { return kind == JetKind::Anti ? tier : 0; }
  auto operator<=>(const JetVar&) const = default;
  bool operator==(const JetVar&) const = default;

  std::string str() const;  // x1, u1_{2,0}, af1_3_{1,0}
};

/// Exponent word of a jet monomial; odd variables carry exponent 1.
using JetWord = std::vector<std::pair<JetVar, unsigned>>;

/// Polynomial function on the truncated jet space with exact rational
/// coefficients; graded-commutative in the odd antifields.
class JetPolynomial {
 public:
  JetPolynomial() = default;
  explicit JetPolynomial(JetCtxPtr ctx) : ctx_(std::move(ctx)) {}

  static JetPolynomial constant(JetCtxPtr ctx, const Rational& c);
  static JetPolynomial var(JetCtxPtr ctx, const JetVar& v);

  const JetCtxPtr& ctx() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<JetWord, Rational>& terms() const { return terms_; }
  void add_term(const JetWord& w, const Rational& c);

  JetPolynomial operator+(const JetPolynomial& o) const;
  JetPolynomial operator-(const JetPolynomial& o) const;
  JetPolynomial operator-() const;
  JetPolynomial operator*(const JetPolynomial& o) const;
  JetPolynomial operator*(const Rational& c) const;
  bool operator==(const JetPolynomial& o) const;
  bool operator!=(const JetPolynomial& o) const { return !(*this == o); }

  /// Homological degree (sum of antifield tiers) when homogeneous; -1 for
  /// zero or mixed.
  int hdegree() const;
  /// Max |alpha| over the field/antifield variables appearing.
  unsigned jet_order() const;
  bool mentions_antifields() const;

  std::string str() const;
  static JetPolynomial parse(const std::string& text, const JetCtxPtr& ctx);

 private:
  JetCtxPtr ctx_;
  std::map<JetWord, Rational> terms_;
};

/// Graded derivation of the jet algebra defined by its value on variables.
struct JetDerivation {
  JetCtxPtr ctx;
  int parity = 0;  // 0: even (total derivatives), 1: odd (KT differential)
  std::function<JetPolynomial(const JetVar&)> image;
};

JetPolynomial derivation_apply(const JetDerivation& d, const JetPolynomial& F);

/// Ordinary partial derivative with respect to one jet coordinate (graded
/// left derivative for odd variables).
JetPolynomial partial(const JetPolynomial& F, const JetVar& v);

/// Extended total derivative: acts on base, field, and antifield variables
/// alike by shifting the multi-index. Plain D_x on antifield-free input.
JetPolynomial total_derivative(int i, const JetPolynomial& F);
JetPolynomial total_derivative(const MultiIndex& beta, const JetPolynomial& F);

/// sum_alpha (-1)^{|alpha|} D^alpha partial_{u^a_alpha} L.
JetPolynomial euler_lagrange(const JetPolynomial& L, int field_a);

/// Evolutionary vector field with characteristics B (one per field):
/// u^a_beta maps to D^beta B_a; base and antifield variables map to zero.
JetDerivation prolong_evolutionary(const JetCtxPtr& ctx,
                                   const std::vector<JetPolynomial>& B);

/// Matrix of total-differential operators, normal-ordered: coefficients
/// left, D_x^beta right.
struct OpEntry {
  std::map<MultiIndex, JetPolynomial> terms;  // beta -> coefficient
};

struct TotalDiffOperator {
  int rows = 0, cols = 0;
  JetCtxPtr ctx;
  std::vector<std::vector<OpEntry>> entries;

  static TotalDiffOperator zero(JetCtxPtr ctx, int rows, int cols);
  static TotalDiffOperator identity(JetCtxPtr ctx, int k);
  std::string str() const;
};

/// Universal linearization: entry (a,b) = sum_beta (d psi^a / d u^b_beta) D^beta.
TotalDiffOperator linearize(const std::vector<JetPolynomial>& psi);

TotalDiffOperator op_compose(const TotalDiffOperator& A,
                             const TotalDiffOperator& B);

std::vector<JetPolynomial> op_apply(const TotalDiffOperator& A,
                                    const std::vector<JetPolynomial>& s);

/// Parses one operator entry like `D1`, `x1*D2^2 + u1_{0,0}`,
/// with the same jet-variable grammar as JetPolynomial.
OpEntry parse_op_entry(const std::string& text, const JetCtxPtr& ctx);

std::string op_entry_str(const OpEntry& e);

}  // namespace kt
