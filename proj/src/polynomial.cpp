#include "kt/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kt {

unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

bool GrevlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  // Equal degree: a > b iff the last nonzero entry of a-b is negative.
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
  return p;
}

Polynomial Polynomial::variable(int nvars, int index, unsigned exp) {
  if (index < 0 || index >= nvars)
    throw structural_error("variable index out of range");
  Polynomial p(nvars);
  if (exp > 0) {
    Exponents e(nvars, 0);
    e[index] = exp;
    p.terms_[e] = 1;
  } else {
    p.terms_[Exponents(nvars, 0)] = 1;
  }
  return p;
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p(static_cast<int>(e.size()));
  if (c != 0) p.terms_[e] = c;
  return p;
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (nvars_ != o.nvars_)
    throw structural_error("polynomial variable counts differ");
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_compatible(o);
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_compatible(o);
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_compatible(o);
  Polynomial r(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(exp_add(ea, eb), ca * cb);
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) != d) return false;
  return true;
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

const Exponents& Polynomial::leading_exponents() const {
  if (terms_.empty()) throw structural_error("leading term of zero");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw structural_error("leading term of zero");
  return terms_.begin()->second;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
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
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out << rational_str(mag);
    } else if (mag == 1) {
      out << mono;
    } else {
      out << rational_str(mag) << "*" << mono;
    }
  }
  return out.str();
}

namespace {

struct Cursor {
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
  [[noreturn]] void fail(const std::string& what) {
    throw structural_error("polynomial parse error at position " +
                           std::to_string(i) + ": " + what);
  }
  Int read_integer() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected digits");
    return Int(s.substr(start, i - start));
  }
};

// factor := integer [ '/' integer ] | 'x' index [ '^' exponent ]
void parse_factor(Cursor& cur, int nvars, Rational& coeff, Exponents& exps) {
  char c = cur.peek();
  if (c == 'x') {
    ++cur.i;
    Int idx = cur.read_integer();
    if (idx < 1 || idx > nvars) cur.fail("variable index out of range");
    unsigned pos = static_cast<unsigned>(idx) - 1;
    unsigned exp = 1;
    if (cur.peek() == '^') {
      ++cur.i;
      Int e = cur.read_integer();
      if (e < 0 || e > 1000000) cur.fail("bad exponent");
      exp = static_cast<unsigned>(e);
    }
    exps[pos] += exp;
  } else if (std::isdigit(static_cast<unsigned char>(c))) {
    Int num = cur.read_integer();
    if (cur.peek() == '/') {
      ++cur.i;
      Int den = cur.read_integer();
      if (den == 0) cur.fail("zero denominator");
      coeff *= Rational(num, den);
    } else {
      coeff *= Rational(num);
    }
  } else {
    cur.fail("expected coefficient or variable");
  }
}

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int nvars) {
  Cursor cur{text};
  Polynomial result(nvars);
  if (cur.done()) throw structural_error("empty polynomial text");
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
    Exponents exps(nvars, 0);
    parse_factor(cur, nvars, coeff, exps);
    while (cur.peek() == '*') {
      ++cur.i;
      parse_factor(cur, nvars, coeff, exps);
    }
    result.add_term(exps, coeff);
    first = false;
  }
  return result;
}

bool divides(const Exponents& divisor, const Exponents& dividend) {
  for (size_t i = 0; i < divisor.size(); ++i)
    if (divisor[i] > dividend[i]) return false;
  return true;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exponents exp_add(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

}  // namespace kt
