#include "kt/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace kt {

namespace {

Polynomial make_monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading_coefficient());
}

bool coprime_leads(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Exponents l = exp_lcm(f.leading_exponents(), g.leading_exponents());
  Polynomial mf = Polynomial::monomial(exp_sub(l, f.leading_exponents()),
                                       Rational(1) / f.leading_coefficient());
  Polynomial mg = Polynomial::monomial(exp_sub(l, g.leading_exponents()),
                                       Rational(1) / g.leading_coefficient());
  return mf * f - mg * g;
}

// Interreduce a Groebner basis to the unique reduced monic form.
std::vector<Polynomial> interreduce(std::vector<Polynomial> basis) {
  // Drop elements whose lead is divisible by another lead.
  std::vector<Polynomial> kept;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      if (!divides(basis[j].leading_exponents(), basis[i].leading_exponents()))
        continue;
      if (basis[j].leading_exponents() == basis[i].leading_exponents() && j > i)
        continue;
      redundant = true;
      break;
    }
    if (!redundant) kept.push_back(basis[i]);
  }
  // Tail-reduce each element against the others.
  std::vector<Polynomial> out;
  for (size_t i = 0; i < kept.size(); ++i) {
    std::vector<Polynomial> others;
    for (size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    Polynomial lead = Polynomial::monomial(kept[i].leading_exponents(),
                                           kept[i].leading_coefficient());
    Polynomial tail = reduce(kept[i] - lead, others);
    out.push_back(make_monic(lead + tail));
  }
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    return GrevlexGreater{}(a.leading_exponents(), b.leading_exponents());
  });
  return out;
}

}  // namespace

Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& basis) {
  Polynomial rem(p.nvars());
  Polynomial work = p;
  while (!work.is_zero()) {
    const Exponents& le = work.leading_exponents();
    const Rational& lc = work.leading_coefficient();
    bool reduced = false;
    for (const Polynomial& g : basis) {
      if (g.is_zero()) continue;
      if (!divides(g.leading_exponents(), le)) continue;
      Polynomial factor = Polynomial::monomial(
          exp_sub(le, g.leading_exponents()), lc / g.leading_coefficient());
      work = work - factor * g;
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(le, lc);
      Polynomial lead = Polynomial::monomial(le, lc);
      work = work - lead;
    }
  }
  return rem;
}

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> basis;
  for (const Polynomial& g : gens)
    if (!g.is_zero()) basis.push_back(make_monic(g));
  if (basis.empty()) return {};

  using Pair = std::pair<size_t, size_t>;
  std::set<Pair> pending;
  auto add_pairs_for = [&](size_t t) {
    // Gebauer-Moeller: drop old pairs and new pairs via lcm criteria.
    const Exponents& lt = basis[t].leading_exponents();
    for (auto it = pending.begin(); it != pending.end();) {
      auto [i, j] = *it;
      Exponents lij = exp_lcm(basis[i].leading_exponents(),
                              basis[j].leading_exponents());
      if (divides(lt, lij) &&
          lij != exp_lcm(basis[i].leading_exponents(), lt) &&
          lij != exp_lcm(basis[j].leading_exponents(), lt)) {
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
    std::vector<Pair> fresh;
    for (size_t i = 0; i < t; ++i) fresh.emplace_back(i, t);
    std::vector<bool> drop(fresh.size(), false);
    for (size_t a = 0; a < fresh.size(); ++a) {
      const Exponents& la = basis[fresh[a].first].leading_exponents();
      if (coprime_leads(la, lt)) {
        drop[a] = true;
        continue;
      }
      Exponents lcma = exp_lcm(la, lt);
      for (size_t b = 0; b < fresh.size(); ++b) {
        if (a == b || drop[b]) continue;
        Exponents lcmb =
            exp_lcm(basis[fresh[b].first].leading_exponents(), lt);
        if (lcma != lcmb && divides(lcmb, lcma)) {
          drop[a] = true;
          break;
        }
      }
    }
    for (size_t a = 0; a < fresh.size(); ++a)
      if (!drop[a]) pending.insert(fresh[a]);
  };

  for (size_t t = 0; t < basis.size(); ++t) add_pairs_for(t);
  while (!pending.empty()) {
    auto [i, j] = *pending.begin();
    pending.erase(pending.begin());
    Polynomial s = reduce(s_polynomial(basis[i], basis[j]), basis);
    if (s.is_zero()) continue;
    basis.push_back(make_monic(s));
    add_pairs_for(basis.size() - 1);
  }
  return interreduce(std::move(basis));
}

Ideal::Ideal(int nvars, std::vector<Polynomial> gens)
    : nvars_(nvars), gens_(std::move(gens)) {
  for (const Polynomial& g : gens_)
    if (g.nvars() != nvars_)
      throw structural_error("ideal generator has wrong variable count");
}

const std::vector<Polynomial>& Ideal::groebner() const {
  if (!gb_done_) {
    gb_ = buchberger(gens_);
    gb_done_ = true;
  }
  return gb_;
}

bool Ideal::contains_one() const {
  const auto& gb = groebner();
  return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
}

bool ideal_member(const Polynomial& p, const Ideal& ideal) {
  if (p.nvars() != ideal.nvars())
    throw structural_error("ideal_member variable count mismatch");
  return reduce(p, ideal.groebner()).is_zero();
}

Polynomial QuotientRing::normal_form(const Polynomial& p) const {
  if (p.nvars() != nvars())
    throw structural_error("normal_form variable count mismatch");
  return reduce(p, modulus_.groebner());
}

std::vector<Exponents> QuotientRing::standard_monomials(unsigned w,
                                                        size_t cap) const {
  std::vector<const Exponents*> leads;
  for (const Polynomial& g : modulus_.groebner())
    leads.push_back(&g.leading_exponents());
  std::vector<Exponents> out;
  Exponents cur(nvars(), 0);
  // Enumerate compositions of w; prune nothing, check lead divisibility at leaf.
  auto rec = [&](auto&& self, int pos, unsigned rem) -> void {
    if (pos == nvars() - 1) {
      cur[pos] = rem;
      for (const Exponents* l : leads)
        if (divides(*l, cur)) return;
      if (out.size() >= cap)
        throw cap_exceeded("standard monomial count exceeds cap");
      out.push_back(cur);
      return;
    }
    for (unsigned k = 0; k <= rem; ++k) {
      cur[pos] = k;
      self(self, pos + 1, rem - k);
    }
    cur[pos] = 0;
  };
  if (nvars() == 0) {
    if (w == 0 && !is_trivial()) out.push_back({});
    return out;
  }
  rec(rec, 0, w);
  return out;
}

}  // namespace kt
