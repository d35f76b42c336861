#include "kt/jet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kt {

unsigned mi_order(const MultiIndex& mi) {
  unsigned s = 0;
  for (unsigned x : mi) s += x;
  return s;
}

namespace {

void mi_walk(int n, unsigned bound, MultiIndex& cur, int pos, unsigned used,
             std::vector<MultiIndex>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = 0; used + k <= bound; ++k) {
    cur[pos] = k;
    mi_walk(n, bound, cur, pos + 1, used + k, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(int n, unsigned bound) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<size_t>(n), 0);
  mi_walk(n, bound, cur, 0, 0, out);
  return out;
}

std::string JetVar::str() const {
  auto mi_str = [this] {
    std::string s = "{";
    for (size_t i = 0; i < mi.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(mi[i]);
    }
    return s + "}";
  };
  switch (kind) {
    case JetKind::Base:
      return "x" + std::to_string(index);
    case JetKind::Field:
      return "u" + std::to_string(index) + "_" + mi_str();
    case JetKind::Anti:
      return "af" + std::to_string(tier) + "_" + std::to_string(index) + "_" +
             mi_str();
  }
  return "?";
}

namespace {

void check_var(const JetContext& ctx, const JetVar& v) {
  switch (v.kind) {
    case JetKind::Base:
      if (v.index < 1 || v.index > ctx.n)
        throw structural_error("base index out of range: " + v.str());
      if (!v.mi.empty())
        throw structural_error("base variable carries a multi-index");
      return;
    case JetKind::Field:
      if (v.index < 1 || v.index > ctx.r)
        throw structural_error("field index out of range: " + v.str());
      break;
    case JetKind::Anti:
      if (v.tier < 1 || v.tier > static_cast<int>(ctx.tiers.size()) ||
          v.index < 1 || v.index > ctx.tiers[v.tier - 1])
        throw structural_error("antifield out of range: " + v.str());
      break;
  }
  if (v.mi.size() != static_cast<size_t>(ctx.n))
    throw structural_error("multi-index length mismatch: " + v.str());
  if (mi_order(v.mi) > ctx.max_order)
    throw cap_exceeded("jet order of " + v.str() + " exceeds truncation " +
                       std::to_string(ctx.max_order));
}

int word_parity(const JetWord& w) {
  int p = 0;
  for (const auto& [v, e] : w) p += v.parity() * static_cast<int>(e);
  return p % 2;
}

// Merge sorted jet words with Koszul signs; false when an odd square appears.
bool jet_word_mul(const JetWord& a, const JetWord& b, JetWord& out,
                  int& sign) {
  std::vector<unsigned> odd_suffix(a.size() + 1, 0);
  for (size_t i = a.size(); i-- > 0;)
    odd_suffix[i] = odd_suffix[i + 1] + (a[i].first.parity() ? 1 : 0);
  out.clear();
  sign = 1;
  size_t i = 0, j = 0;
  auto push = [&](const JetVar& v, unsigned e) {
    if (!out.empty() && out.back().first == v) {
      if (v.parity()) return false;
      out.back().second += e;
    } else {
      out.emplace_back(v, e);
    }
    return true;
  };
  while (i < a.size() || j < b.size()) {
    bool take_a = j >= b.size() || (i < a.size() && !(b[j].first < a[i].first));
    if (take_a) {
      if (!push(a[i].first, a[i].second)) return false;
      ++i;
    } else {
      if (b[j].first.parity() && (odd_suffix[i] % 2)) sign = -sign;
      if (!push(b[j].first, b[j].second)) return false;
      ++j;
    }
  }
  return true;
}

void require_ctx_match(const JetPolynomial& a, const JetPolynomial& b) {
  if (a.ctx() && b.ctx() && a.ctx() != b.ctx())
    throw structural_error("jet polynomials from different contexts");
}

}  // namespace

JetPolynomial JetPolynomial::constant(JetCtxPtr ctx, const Rational& c) {
  JetPolynomial p(std::move(ctx));
  if (c != 0) p.terms_[{}] = c;
  return p;
}

JetPolynomial JetPolynomial::var(JetCtxPtr ctx, const JetVar& v) {
  check_var(*ctx, v);
  JetPolynomial p(std::move(ctx));
  p.terms_[{{v, 1}}] = 1;
  return p;
}

void JetPolynomial::add_term(const JetWord& w, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

JetPolynomial JetPolynomial::operator+(const JetPolynomial& o) const {
  require_ctx_match(*this, o);
  JetPolynomial r(ctx_ ? ctx_ : o.ctx_);
  r.terms_ = terms_;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

JetPolynomial JetPolynomial::operator-(const JetPolynomial& o) const {
  require_ctx_match(*this, o);
  JetPolynomial r(ctx_ ? ctx_ : o.ctx_);
  r.terms_ = terms_;
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

JetPolynomial JetPolynomial::operator-() const {
  JetPolynomial r(ctx_);
  for (const auto& [w, c] : terms_) r.terms_[w] = -c;
  return r;
}

JetPolynomial JetPolynomial::operator*(const JetPolynomial& o) const {
  require_ctx_match(*this, o);
  JetPolynomial r(ctx_ ? ctx_ : o.ctx_);
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : o.terms_) {
      JetWord merged;
      int sign;
      if (!jet_word_mul(wa, wb, merged, sign)) continue;
      Rational prod = ca * cb;
      r.add_term(merged, sign < 0 ? Rational(-prod) : prod);
    }
  }
  return r;
}

JetPolynomial JetPolynomial::operator*(const Rational& c) const {
  JetPolynomial r(ctx_);
  if (c == 0) return r;
  for (const auto& [w, k] : terms_) r.terms_[w] = k * c;
  return r;
}

bool JetPolynomial::operator==(const JetPolynomial& o) const {
  return terms_ == o.terms_;
}

int JetPolynomial::hdegree() const {
  if (terms_.empty()) return -1;
  auto deg = [](const JetWord& w) {
    int d = 0;
    for (const auto& [v, e] : w) d += v.hdegree() * static_cast<int>(e);
    return d;
  };
  int d = deg(terms_.begin()->first);
  for (const auto& [w, c] : terms_)
    if (deg(w) != d) return -1;
  return d;
}

unsigned JetPolynomial::jet_order() const {
  unsigned m = 0;
  for (const auto& [w, c] : terms_)
    for (const auto& [v, e] : w) m = std::max(m, mi_order(v.mi));
  return m;
}

bool JetPolynomial::mentions_antifields() const {
  for (const auto& [w, c] : terms_)
    for (const auto& [v, e] : w)
      if (v.kind == JetKind::Anti) return true;
  return false;
}

std::string JetPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational mag = c;
    if (first) {
      if (c < 0) {
        out << "-";
        mag = -c;
      }
      first = false;
    } else if (c < 0) {
      out << " - ";
      mag = -c;
    } else {
      out << " + ";
    }
    std::string mono;
    for (const auto& [v, e] : w) {
      if (!mono.empty()) mono += "*";
      mono += v.str();
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) out << rational_str(mag);
    else if (mag == 1) out << mono;
    else out << rational_str(mag) << "*" << mono;
  }
  return out.str();
}

namespace {

struct JCursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip_ws();
    size_t len = std::string(w).size();
    if (s.compare(i, len, w) == 0) {
      i += len;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw structural_error("jet parse error at position " + std::to_string(i) +
                           ": " + what);
  }
  Int read_integer() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected digits");
    return Int(s.substr(start, i - start));
  }
  int read_small_int() {
    Int v = read_integer();
    if (v < 0 || v > 1000000) fail("index out of range");
    return static_cast<int>(v);
  }
  MultiIndex read_mi(int n) {
    if (!eat('_')) fail("expected '_' before multi-index");
    if (!eat('{')) fail("expected '{'");
    MultiIndex mi;
    if (!eat('}')) {
      while (true) {
        mi.push_back(static_cast<unsigned>(read_small_int()));
        if (eat('}')) break;
        if (!eat(',')) fail("expected ',' or '}' in multi-index");
      }
    }
    if (mi.size() != static_cast<size_t>(n)) fail("multi-index length mismatch");
    return mi;
  }
};

// factor := rational | jet variable [^e] ; returns false for D-factors so the
// operator parser can take over.
bool parse_jet_factor(JCursor& cur, const JetCtxPtr& ctx, Rational& coeff,
                      std::vector<std::pair<JetVar, unsigned>>& vars,
                      bool allow_d, MultiIndex* dbeta) {
  char c = cur.peek();
  JetVar v;
  if (allow_d && c == 'D') {
    ++cur.i;
    int idx = cur.read_small_int();
    if (idx < 1 || idx > ctx->n) cur.fail("D index out of range");
    unsigned e = 1;
    if (cur.eat('^')) e = static_cast<unsigned>(cur.read_small_int());
    (*dbeta)[idx - 1] += e;
    return false;
  }
  if (cur.eat_word("af")) {
    v.kind = JetKind::Anti;
    v.tier = cur.read_small_int();
    if (!cur.eat('_')) cur.fail("expected '_' after antifield tier");
    v.index = cur.read_small_int();
    v.mi = cur.read_mi(ctx->n);
  } else if (c == 'u') {
    ++cur.i;
    v.kind = JetKind::Field;
    v.index = cur.read_small_int();
    v.mi = cur.read_mi(ctx->n);
  } else if (c == 'x') {
    ++cur.i;
    v.kind = JetKind::Base;
    v.index = cur.read_small_int();
  } else if (std::isdigit(static_cast<unsigned char>(c))) {
    Int num = cur.read_integer();
    if (cur.eat('/')) {
      Int den = cur.read_integer();
      if (den == 0) cur.fail("zero denominator");
      coeff *= Rational(num, den);
    } else {
      coeff *= Rational(num);
    }
    return true;
  } else {
    cur.fail("expected coefficient, variable, or D factor");
  }
  check_var(*ctx, v);
  unsigned e = 1;
  if (cur.eat('^')) e = static_cast<unsigned>(cur.read_small_int());
  vars.emplace_back(v, e);
  return true;
}

JetPolynomial word_to_poly(const JetCtxPtr& ctx,
                           const std::vector<std::pair<JetVar, unsigned>>& vars,
                           const Rational& coeff) {
  JetPolynomial p = JetPolynomial::constant(ctx, coeff);
  for (const auto& [v, e] : vars)
    for (unsigned k = 0; k < e; ++k) p = p * JetPolynomial::var(ctx, v);
  return p;
}

}  // namespace

JetPolynomial JetPolynomial::parse(const std::string& text,
                                   const JetCtxPtr& ctx) {
  JCursor cur{text};
  if (cur.done()) throw structural_error("empty jet polynomial text");
  JetPolynomial result(ctx);
  bool first = true;
  while (!cur.done()) {
    Rational sign = 1;
    char c = cur.peek();
    if (c == '+' || c == '-') {
      ++cur.i;
      if (c == '-') sign = -1;
    } else if (!first) {
      cur.fail("expected '+' or '-' between terms");
    }
    Rational coeff = sign;
    std::vector<std::pair<JetVar, unsigned>> vars;
    parse_jet_factor(cur, ctx, coeff, vars, false, nullptr);
    while (cur.eat('*'))
      parse_jet_factor(cur, ctx, coeff, vars, false, nullptr);
    result = result + word_to_poly(ctx, vars, coeff);
    first = false;
  }
  return result;
}

JetPolynomial derivation_apply(const JetDerivation& d, const JetPolynomial& F) {
  JetPolynomial result(F.ctx() ? F.ctx() : d.ctx);
  const JetCtxPtr& ctx = F.ctx() ? F.ctx() : d.ctx;
  for (const auto& [word, coeff] : F.terms()) {
    int prefix_parity = 0;
    for (size_t i = 0; i < word.size(); ++i) {
      const auto& [v, e] = word[i];
      JetPolynomial img = d.image(v);
      if (!img.is_zero()) {
        JetPolynomial prefix(ctx), suffix(ctx);
        JetWord pw(word.begin(), word.begin() + i);
        JetWord sw(word.begin() + i + 1, word.end());
        if (e > 1) sw.insert(sw.begin(), {v, e - 1});
        prefix.add_term(pw, 1);
        suffix.add_term(sw, 1);
        JetPolynomial piece = prefix * img * suffix * Rational(e) * coeff;
        if (d.parity && (prefix_parity % 2)) piece = -piece;
        result = result + piece;
      }
      prefix_parity += v.parity() * static_cast<int>(e);
    }
  }
  return result;
}

JetPolynomial partial(const JetPolynomial& F, const JetVar& v) {
  JetPolynomial result(F.ctx());
  for (const auto& [word, coeff] : F.terms()) {
    int prefix_parity = 0;
    for (size_t i = 0; i < word.size(); ++i) {
      const auto& [w, e] = word[i];
      if (w == v) {
        JetWord rest(word.begin(), word.begin() + i);
        JetWord tail(word.begin() + i + 1, word.end());
        if (e > 1) tail.insert(tail.begin(), {w, e - 1});
        rest.insert(rest.end(), tail.begin(), tail.end());
        Rational c = coeff * e;
        if (v.parity() && (prefix_parity % 2)) c = -c;
        result.add_term(rest, c);
        break;  // each variable occurs once in a sorted word
      }
      prefix_parity += w.parity() * static_cast<int>(e);
    }
  }
  return result;
}

JetPolynomial total_derivative(int i, const JetPolynomial& F) {
  const JetCtxPtr& ctx = F.ctx();
  if (!ctx) return F;
  if (i < 1 || i > ctx->n)
    throw structural_error("total derivative index out of range");
  JetDerivation D{
      ctx, 0, [ctx, i](const JetVar& v) -> JetPolynomial {
        if (v.kind == JetKind::Base)
          return JetPolynomial::constant(ctx, v.index == i ? 1 : 0);
        JetVar shifted = v;
        shifted.mi[i - 1] += 1;
        if (mi_order(shifted.mi) > ctx->max_order)
          throw cap_exceeded("total derivative exceeds jet truncation " +
                             std::to_string(ctx->max_order));
        return JetPolynomial::var(ctx, shifted);
      }};
  return derivation_apply(D, F);
}

JetPolynomial total_derivative(const MultiIndex& beta, const JetPolynomial& F) {
  JetPolynomial r = F;
  for (size_t i = 0; i < beta.size(); ++i)
    for (unsigned k = 0; k < beta[i]; ++k)
      r = total_derivative(static_cast<int>(i) + 1, r);
  return r;
}

JetPolynomial euler_lagrange(const JetPolynomial& L, int field_a) {
  if (L.mentions_antifields())
    throw structural_error("euler_lagrange input mentions antifields");
  const JetCtxPtr& ctx = L.ctx();
  JetPolynomial result(ctx);
  std::vector<JetVar> seen;
  for (const auto& [w, c] : L.terms())
    for (const auto& [v, e] : w)
      if (v.kind == JetKind::Field && v.index == field_a &&
          std::find(seen.begin(), seen.end(), v) == seen.end())
        seen.push_back(v);
  for (const JetVar& v : seen) {
    JetPolynomial term = total_derivative(v.mi, partial(L, v));
    if (mi_order(v.mi) % 2) term = -term;
    result = result + term;
  }
  return result;
}

JetDerivation prolong_evolutionary(const JetCtxPtr& ctx,
                                   const std::vector<JetPolynomial>& B) {
  if (B.size() != static_cast<size_t>(ctx->r))
    throw structural_error("one characteristic per field required");
  auto chars = std::make_shared<std::vector<JetPolynomial>>(B);
  return {ctx, 0, [ctx, chars](const JetVar& v) -> JetPolynomial {
            if (v.kind != JetKind::Field)
              return JetPolynomial(ctx);
            return total_derivative(v.mi, (*chars)[v.index - 1]);
          }};
}

TotalDiffOperator TotalDiffOperator::zero(JetCtxPtr ctx, int rows, int cols) {
  TotalDiffOperator op;
  op.rows = rows;
  op.cols = cols;
  op.ctx = std::move(ctx);
  op.entries.assign(rows, std::vector<OpEntry>(cols));
  return op;
}

TotalDiffOperator TotalDiffOperator::identity(JetCtxPtr ctx, int k) {
  TotalDiffOperator op = zero(ctx, k, k);
  MultiIndex zero_mi(ctx ? ctx->n : 0, 0);
  for (int i = 0; i < k; ++i)
    op.entries[i][i].terms[zero_mi] = JetPolynomial::constant(op.ctx, 1);
  return op;
}

std::string op_entry_str(const OpEntry& e) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [beta, coeff] : e.terms) {
    if (coeff.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    std::string ds;
    for (size_t i = 0; i < beta.size(); ++i) {
      if (beta[i] == 0) continue;
      if (!ds.empty()) ds += "*";
      ds += "D" + std::to_string(i + 1);
      if (beta[i] > 1) ds += "^" + std::to_string(beta[i]);
    }
    bool coeff_is_one = coeff == JetPolynomial::constant(coeff.ctx(), 1);
    if (ds.empty()) out << "(" << coeff.str() << ")";
    else if (coeff_is_one) out << ds;
    else out << "(" << coeff.str() << ")*" << ds;
  }
  if (first) out << "0";
  return out.str();
}

std::string TotalDiffOperator::str() const {
  std::ostringstream out;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j) out << " , ";
      out << op_entry_str(entries[i][j]);
    }
    out << "\n";
  }
  return out.str();
}

TotalDiffOperator linearize(const std::vector<JetPolynomial>& psi) {
  if (psi.empty()) throw structural_error("linearize: empty operator column");
  JetCtxPtr ctx;
  for (const auto& p : psi)
    if (p.ctx()) ctx = p.ctx();
  if (!ctx) throw structural_error("linearize: no context available");
  TotalDiffOperator op = TotalDiffOperator::zero(ctx, (int)psi.size(), ctx->r);
  for (size_t a = 0; a < psi.size(); ++a) {
    if (psi[a].mentions_antifields())
      throw structural_error("linearize input mentions antifields");
    std::vector<JetVar> seen;
    for (const auto& [w, c] : psi[a].terms())
      for (const auto& [v, e] : w)
        if (v.kind == JetKind::Field &&
            std::find(seen.begin(), seen.end(), v) == seen.end())
          seen.push_back(v);
    for (const JetVar& v : seen) {
      JetPolynomial coeff = partial(psi[a], v);
      if (coeff.is_zero()) continue;
      OpEntry& entry = op.entries[a][v.index - 1];
      auto it = entry.terms.find(v.mi);
      if (it == entry.terms.end()) entry.terms.emplace(v.mi, coeff);
      else it->second = it->second + coeff;
    }
  }
  return op;
}

namespace {

void entry_add(OpEntry& dst, const MultiIndex& beta, const JetPolynomial& c) {
  if (c.is_zero()) return;
  auto it = dst.terms.find(beta);
  if (it == dst.terms.end()) {
    dst.terms.emplace(beta, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) dst.terms.erase(it);
  }
}

// f D^alpha composed with g D^beta, expanded into normal order via
// D_i (g D^gamma) = (D_i g) D^gamma + g D^{gamma+e_i}.
void compose_terms(OpEntry& dst, const JetPolynomial& f,
                   const MultiIndex& alpha, const JetPolynomial& g,
                   const MultiIndex& beta) {
  std::map<MultiIndex, JetPolynomial> work{{beta, g}};
  for (size_t i = 0; i < alpha.size(); ++i) {
    for (unsigned k = 0; k < alpha[i]; ++k) {
      std::map<MultiIndex, JetPolynomial> next;
      for (const auto& [gamma, h] : work) {
        JetPolynomial dh = total_derivative(static_cast<int>(i) + 1, h);
        if (!dh.is_zero()) {
          auto it = next.find(gamma);
          if (it == next.end()) next.emplace(gamma, dh);
          else it->second = it->second + dh;
        }
        MultiIndex up = gamma;
        up[i] += 1;
        auto it = next.find(up);
        if (it == next.end()) next.emplace(up, h);
        else it->second = it->second + h;
      }
      work = std::move(next);
    }
  }
  for (const auto& [gamma, h] : work) entry_add(dst, gamma, f * h);
}

}  // namespace

TotalDiffOperator op_compose(const TotalDiffOperator& A,
                             const TotalDiffOperator& B) {
  if (A.cols != B.rows)
    throw structural_error("op_compose: shape mismatch");
  TotalDiffOperator C = TotalDiffOperator::zero(A.ctx ? A.ctx : B.ctx, A.rows,
                                                B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < B.cols; ++k)
      for (int j = 0; j < A.cols; ++j)
        for (const auto& [alpha, f] : A.entries[i][j].terms)
          for (const auto& [beta, g] : B.entries[j][k].terms)
            compose_terms(C.entries[i][k], f, alpha, g, beta);
  return C;
}

std::vector<JetPolynomial> op_apply(const TotalDiffOperator& A,
                                    const std::vector<JetPolynomial>& s) {
  if (static_cast<int>(s.size()) != A.cols)
    throw structural_error("op_apply: shape mismatch");
  std::vector<JetPolynomial> out(A.rows, JetPolynomial(A.ctx));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      for (const auto& [beta, coeff] : A.entries[i][j].terms)
        out[i] = out[i] + coeff * total_derivative(beta, s[j]);
  return out;
}

OpEntry parse_op_entry(const std::string& text, const JetCtxPtr& ctx) {
  JCursor cur{text};
  OpEntry entry;
  if (cur.done()) throw structural_error("empty operator entry");
  bool first = true;
  while (!cur.done()) {
    Rational sign = 1;
    char c = cur.peek();
    if (c == '+' || c == '-') {
      ++cur.i;
      if (c == '-') sign = -1;
    } else if (!first) {
      cur.fail("expected '+' or '-' between operator terms");
    }
    Rational coeff = sign;
    std::vector<std::pair<JetVar, unsigned>> vars;
    MultiIndex beta(ctx->n, 0);
    // Normal order: all coefficient factors must precede the D factors.
    bool seen_d = !parse_jet_factor(cur, ctx, coeff, vars, true, &beta);
    while (cur.eat('*')) {
      bool is_var = parse_jet_factor(cur, ctx, coeff, vars, true, &beta);
      if (is_var && seen_d)
        cur.fail("coefficient factors must precede D factors");
      seen_d = seen_d || !is_var;
    }
    entry_add(entry, beta, word_to_poly(ctx, vars, coeff));
    first = false;
  }
  return entry;
}

}  // namespace kt
