#include "kt/gca.hpp"

#include <algorithm>
#include <sstream>

namespace kt {

std::string GeneratorSpec::str() const {
  return name + "{deg=" + std::to_string(degree) + ",w=" +
         std::to_string(weight) + "}";
}

static bool canon_less(const GeneratorSpec& a, const GeneratorSpec& b) {
  return std::tie(a.block, a.name) < std::tie(b.block, b.name);
}

GradedAlgebra::GradedAlgebra(QuotientRing ring, std::vector<GeneratorSpec> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)) {
  std::sort(gens_.begin(), gens_.end(), canon_less);
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].degree < 1)
      throw structural_error("generator degree must be >= 1");
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (gens_[i].name == gens_[j].name)
        throw structural_error("duplicate generator name " + gens_[i].name);
  }
}

int GradedAlgebra::find(const std::string& name) const {
  for (size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

AlgebraPtr GradedAlgebra::extended(std::vector<GeneratorSpec> extra) const {
  std::sort(extra.begin(), extra.end(), canon_less);
  if (!gens_.empty() && !extra.empty() && canon_less(extra.front(), gens_.back()))
    throw structural_error("extension generators must follow existing blocks");
  std::vector<GeneratorSpec> all = gens_;
  all.insert(all.end(), extra.begin(), extra.end());
  return std::make_shared<GradedAlgebra>(ring_, std::move(all));
}

static bool same_ring(const QuotientRing& a, const QuotientRing& b) {
  return a.nvars() == b.nvars() &&
         a.modulus().groebner() == b.modulus().groebner();
}

bool GradedAlgebra::prefix_of(const GradedAlgebra& other) const {
  if (!same_ring(ring_, other.ring_)) return false;
  if (gens_.size() > other.gens_.size()) return false;
  for (size_t i = 0; i < gens_.size(); ++i)
    if (!(gens_[i] == other.gens_[i])) return false;
  return true;
}

AlgebraPtr make_algebra(QuotientRing ring, std::vector<GeneratorSpec> gens) {
  return std::make_shared<GradedAlgebra>(std::move(ring), std::move(gens));
}

unsigned word_degree(const GradedAlgebra& alg, const GenWord& w) {
  unsigned d = 0;
  for (auto [g, e] : w) d += alg.gen(g).degree * e;
  return d;
}

unsigned word_weight(const GradedAlgebra& alg, const GenWord& w) {
  unsigned d = 0;
  for (auto [g, e] : w) d += alg.gen(g).weight * e;
  return d;
}

GcaElement GcaElement::scalar(AlgebraPtr alg, const Polynomial& c) {
  GcaElement r(std::move(alg));
  r.add_term({}, c);
  return r;
}

GcaElement GcaElement::generator(AlgebraPtr alg, unsigned index) {
  if (index >= alg->generators().size())
    throw structural_error("generator index out of range");
  GcaElement r(alg);
  r.add_term({{index, 1}}, Polynomial::constant(alg->ring().nvars(), 1));
  return r;
}

void GcaElement::add_term(const GenWord& word, const Polynomial& c) {
  Polynomial nf = alg_->ring().normal_form(c);
  if (nf.is_zero()) return;
  auto it = terms_.find(word);
  if (it == terms_.end()) {
    terms_.emplace(word, std::move(nf));
  } else {
    it->second = it->second + nf;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

// Picks the larger of the two algebras, requiring prefix compatibility.
static const AlgebraPtr& join_algebras(const GcaElement& a, const GcaElement& b) {
  if (a.algebra() == b.algebra()) return a.algebra();
  if (a.algebra()->prefix_of(*b.algebra())) return b.algebra();
  if (b.algebra()->prefix_of(*a.algebra())) return a.algebra();
  throw structural_error("elements of incompatible algebras");
}

GcaElement GcaElement::operator+(const GcaElement& o) const {
  const AlgebraPtr& alg = join_algebras(*this, o);
  GcaElement r(alg);
  for (const auto& [w, c] : terms_) r.add_term(w, c);
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

GcaElement GcaElement::operator-(const GcaElement& o) const {
  const AlgebraPtr& alg = join_algebras(*this, o);
  GcaElement r(alg);
  for (const auto& [w, c] : terms_) r.add_term(w, c);
  for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
  return r;
}

GcaElement GcaElement::operator-() const {
  GcaElement r(alg_);
  for (const auto& [w, c] : terms_) r.terms_[w] = -c;
  return r;
}

GcaElement GcaElement::operator*(const Rational& c) const {
  GcaElement r(alg_);
  if (c == 0) return r;
  for (const auto& [w, k] : terms_) r.terms_[w] = k * c;
  return r;
}

bool GcaElement::operator==(const GcaElement& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  return join_algebras(*this, o) != nullptr && terms_ == o.terms_;
}

int GcaElement::degree() const {
  if (terms_.empty()) return -1;
  int d = static_cast<int>(word_degree(*alg_, terms_.begin()->first));
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(word_degree(*alg_, w)) != d) return -1;
  return d;
}

int GcaElement::weight() const {
  int best = -1;
  for (const auto& [w, c] : terms_) {
    int wt = c.degree() + static_cast<int>(word_weight(*alg_, w));
    best = std::max(best, wt);
  }
  return best;
}

bool GcaElement::weight_homogeneous() const {
  int common = -1;
  for (const auto& [w, c] : terms_) {
    if (!c.is_homogeneous()) return false;
    int wt = c.degree() + static_cast<int>(word_weight(*alg_, w));
    if (common == -1) common = wt;
    if (wt != common) return false;
  }
  return true;
}

GcaElement GcaElement::promoted(const AlgebraPtr& bigger) const {
  if (alg_ == bigger) return *this;
  if (!alg_ || !alg_->prefix_of(*bigger))
    throw structural_error("promotion target does not extend the algebra");
  GcaElement r(bigger);
  for (const auto& [w, c] : terms_) r.terms_[w] = c;
  return r;
}

std::string GcaElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.str() << ")";
    for (auto [g, e] : w) {
      out << "*" << alg_->gen(g).name;
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

namespace {

// Merge sorted words; returns false when an odd generator squares to zero.
// `sign` accumulates the Koszul sign of moving b's odd factors into place.
bool word_mul(const GradedAlgebra& alg, const GenWord& a, const GenWord& b,
              GenWord& out, int& sign) {
  // odd_suffix[i] = parity of the part of `a` not yet consumed at step i.
  std::vector<unsigned> odd_suffix(a.size() + 1, 0);
  for (size_t i = a.size(); i-- > 0;)
    odd_suffix[i] = odd_suffix[i + 1] + (alg.gen(a[i].first).odd() ? 1 : 0);
  out.clear();
  sign = 1;
  size_t i = 0, j = 0;
  auto push = [&](unsigned g, unsigned e) {
    if (!out.empty() && out.back().first == g) {
      if (alg.gen(g).odd()) return false;
      out.back().second += e;
    } else {
      out.emplace_back(g, e);
    }
    return true;
  };
  while (i < a.size() || j < b.size()) {
    bool take_a = j >= b.size() ||
                  (i < a.size() && a[i].first <= b[j].first);
    if (take_a) {
      if (!push(a[i].first, a[i].second)) return false;
      ++i;
    } else {
      if (alg.gen(b[j].first).odd() && (odd_suffix[i] % 2)) sign = -sign;
      if (!push(b[j].first, b[j].second)) return false;
      ++j;
    }
  }
  return true;
}

}  // namespace

GcaElement gca_mul(const GcaElement& a, const GcaElement& b) {
  const AlgebraPtr& alg = join_algebras(a, b);
  GcaElement r(alg);
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      GenWord merged;
      int sign;
      if (!word_mul(*alg, wa, wb, merged, sign)) continue;
      Polynomial c = ca * cb;
      if (sign < 0) c = -c;
      r.add_term(merged, c);
    }
  }
  return r;
}

static GcaElement scale_poly(const GcaElement& a, const Polynomial& p) {
  GcaElement r(a.algebra());
  for (const auto& [w, c] : a.terms()) r.add_term(w, c * p);
  return r;
}

GcaElement derivation_apply(const Derivation& d, const GcaElement& a) {
  const AlgebraPtr alg = a.algebra() ? join_algebras(a, GcaElement(d.alg))
                                     : d.alg;
  GcaElement result(alg);
  Polynomial one = Polynomial::constant(alg->ring().nvars(), 1);
  for (const auto& [word, coeff] : a.terms()) {
    if (d.coeff_hook) {
      GcaElement pure(alg);
      pure.add_term(word, one);
      result = result + gca_mul(d.coeff_hook(coeff), pure);
    }
    unsigned prefix_deg = 0;
    for (size_t i = 0; i < word.size(); ++i) {
      auto [g, e] = word[i];
      auto img_it = d.images.find(g);
      if (img_it != d.images.end() && !img_it->second.is_zero()) {
        GcaElement prefix(alg), suffix(alg);
        GenWord pw(word.begin(), word.begin() + i);
        GenWord sw(word.begin() + i + 1, word.end());
        if (e > 1) sw.insert(sw.begin(), {g, e - 1});
        prefix.add_term(pw, one);
        suffix.add_term(sw, one);
        GcaElement piece =
            gca_mul(gca_mul(prefix, img_it->second.promoted(alg)), suffix) *
            Rational(e);
        if (prefix_deg % 2) piece = -piece;
        result = result + scale_poly(piece, coeff);
      }
      prefix_deg += alg->gen(g).degree * e;
    }
  }
  return result;
}

std::optional<SquareWitness> derivation_square_witness(const Derivation& d) {
  if (d.degree != -1)
    throw structural_error("square witness requires a degree -1 derivation");
  for (const auto& [g, img] : d.images) {
    GcaElement dd = derivation_apply(d, img);
    if (!dd.is_zero()) return SquareWitness{d.alg->gen(g).name, dd};
  }
  return std::nullopt;
}

}  // namespace kt
