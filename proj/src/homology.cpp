#include "kt/homology.hpp"

#include <algorithm>
#include <sstream>

namespace kt {

void Eliminator::reduce(SparseVec& v, SparseVec* combo) const {
  // Stored rows carry no entries at each other's pivots, so one ascending
  // pass cannot reintroduce a pivot index.
  for (const auto& [p, row] : rows_) {
    auto it = v.find(p);
    if (it == v.end()) continue;
    Rational a = it->second;
    for (const auto& [i, x] : row.first) {
      auto vit = v.find(i);
      Rational nv = (vit == v.end() ? Rational(0) : vit->second) - a * x;
      if (nv == 0) {
        if (vit != v.end()) v.erase(vit);
      } else if (vit == v.end()) {
        v.emplace(i, nv);
      } else {
        vit->second = nv;
      }
    }
    if (combo) {
      for (const auto& [i, x] : row.second) {
        Rational nv = (*combo)[i] - a * x;
        if (nv == 0) combo->erase(i);
        else (*combo)[i] = nv;
      }
    }
  }
}

void Eliminator::insert(SparseVec v, SparseVec combo) {
  if (v.empty()) throw structural_error("cannot insert zero pivot row");
  int pivot = v.begin()->first;
  Rational inv = Rational(1) / v.begin()->second;
  for (auto& [i, x] : v) x *= inv;
  for (auto& [i, x] : combo) x *= inv;
  // Back-reduce existing rows so full reduction is maintained.
  for (auto& [p, row] : rows_) {
    auto it = row.first.find(pivot);
    if (it == row.first.end()) continue;
    Rational a = it->second;
    for (const auto& [i, x] : v) {
      Rational nv = (row.first.count(i) ? row.first[i] : Rational(0)) - a * x;
      if (nv == 0) row.first.erase(i);
      else row.first[i] = nv;
    }
    for (const auto& [i, x] : combo) {
      Rational nv = (row.second.count(i) ? row.second[i] : Rational(0)) - a * x;
      if (nv == 0) row.second.erase(i);
      else row.second[i] = nv;
    }
  }
  rows_.emplace(pivot, std::make_pair(std::move(v), std::move(combo)));
}

std::vector<SparseVec> Eliminator::rref_rows() const {
  std::vector<SparseVec> out;
  for (const auto& [p, row] : rows_) out.push_back(row.first);
  return out;
}

namespace {

// Generator words of homological degree exactly n and weight at most wmax.
void enumerate_words(const GradedAlgebra& alg, int n, unsigned wmax,
                     std::vector<std::pair<GenWord, unsigned>>& out) {
  GenWord cur;
  auto rec = [&](auto&& self, size_t gi, int ndeg, unsigned wleft) -> void {
    if (ndeg == 0) {
      out.emplace_back(cur, wmax - wleft);
      return;
    }
    if (gi >= alg.generators().size()) return;
    const GeneratorSpec& g = alg.gen(gi);
    self(self, gi + 1, ndeg, wleft);  // exponent 0
    unsigned emax = g.odd() ? 1u : static_cast<unsigned>(ndeg / g.degree);
    for (unsigned e = 1; e <= emax; ++e) {
      if (static_cast<int>(g.degree * e) > ndeg) break;
      if (g.weight * e > wleft) break;
      cur.emplace_back(static_cast<unsigned>(gi), e);
      self(self, gi + 1, ndeg - static_cast<int>(g.degree * e),
           wleft - g.weight * e);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(rec, 0, n, wmax);
}

int find_index(const std::map<SliceMonomial, int>& index,
               const SliceMonomial& m) {
  auto it = index.find(m);
  return it == index.end() ? -1 : it->second;
}

// Columns of d restricted to `from`, expressed in `to` coordinates.
QMatrix differential_matrix(const ChainComplex& cx,
                            const std::vector<SliceMonomial>& from,
                            const std::vector<SliceMonomial>& to) {
  std::map<SliceMonomial, int> index;
  for (size_t i = 0; i < to.size(); ++i) index[to[i]] = static_cast<int>(i);
  QMatrix m;
  m.rows = static_cast<int>(to.size());
  for (const SliceMonomial& src : from) {
    GcaElement v(cx.alg);
    v.add_term(src.word, Polynomial::monomial(src.ring_exps, 1));
    GcaElement dv = derivation_apply(cx.d, v);
    SparseVec col;
    for (const auto& [word, poly] : dv.terms()) {
      for (const auto& [e, c] : poly.terms()) {
        int idx = find_index(index, SliceMonomial{e, word});
        if (idx < 0)
          throw structural_error(
              "differential image leaves the slice; complex is not "
              "weight-graded as claimed");
        col[idx] += c;
        if (col[idx] == 0) col.erase(idx);
      }
    }
    m.cols.push_back(std::move(col));
  }
  return m;
}

SparseVec element_coords(const ChainComplex& cx,
                         const std::vector<SliceMonomial>& basis,
                         const GcaElement& z) {
  std::map<SliceMonomial, int> index;
  for (size_t i = 0; i < basis.size(); ++i)
    index[basis[i]] = static_cast<int>(i);
  SparseVec v;
  for (const auto& [word, poly] : z.terms()) {
    for (const auto& [e, c] : poly.terms()) {
      int idx = find_index(index, SliceMonomial{e, word});
      if (idx < 0) throw structural_error("element does not lie in the slice");
      v[idx] = c;
    }
  }
  return v;
}

}  // namespace

std::vector<SliceMonomial> slice_monomials(const ChainComplex& cx, int n,
                                           unsigned w,
                                           const HomologyCaps& caps) {
  if (w > caps.max_weight)
    throw cap_exceeded("weight " + std::to_string(w) + " exceeds cap " +
                       std::to_string(caps.max_weight));
  std::vector<SliceMonomial> out;
  if (n < 0) return out;
  std::vector<std::pair<GenWord, unsigned>> words;
  enumerate_words(*cx.alg, n, w, words);
  for (const auto& [word, wword] : words) {
    unsigned remaining = w - wword;
    unsigned lo = cx.mode == GradingMode::Graded ? remaining : 0;
    for (unsigned rw = lo; rw <= remaining; ++rw) {
      for (const Exponents& e :
           cx.alg->ring().standard_monomials(rw, caps.max_slice_dim)) {
        out.push_back({e, word});
        if (out.size() > caps.max_slice_dim)
          throw cap_exceeded("slice dimension exceeds cap");
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeightSlice slice_basis(const ChainComplex& cx, int n, unsigned w,
                        const HomologyCaps& caps) {
  WeightSlice s;
  s.n = n;
  s.w = w;
  s.basis = slice_monomials(cx, n, w, caps);
  s.below_basis = slice_monomials(cx, n - 1, w, caps);
  s.above_basis = slice_monomials(cx, n + 1, w, caps);
  s.out_matrix = differential_matrix(cx, s.basis, s.below_basis);
  s.in_matrix = differential_matrix(cx, s.above_basis, s.basis);
  return s;
}

unsigned betti(const ChainComplex& cx, int n, unsigned w,
               const HomologyCaps& caps) {
  WeightSlice s = slice_basis(cx, n, w, caps);
  Eliminator out_elim, in_elim;
  for (const SparseVec& c : s.out_matrix.cols) {
    SparseVec v = c;
    out_elim.reduce(v);
    if (!v.empty()) out_elim.insert(std::move(v));
  }
  for (const SparseVec& c : s.in_matrix.cols) {
    SparseVec v = c;
    in_elim.reduce(v);
    if (!v.empty()) in_elim.insert(std::move(v));
  }
  size_t dim = s.basis.size();
  size_t ker = dim - out_elim.rank();
  return static_cast<unsigned>(ker - in_elim.rank());
}

GcaElement element_from_coords(const ChainComplex& cx,
                               const std::vector<SliceMonomial>& basis,
                               const SparseVec& coords) {
  GcaElement r(cx.alg);
  for (const auto& [i, c] : coords)
    r.add_term(basis[i].word, Polynomial::monomial(basis[i].ring_exps, c));
  return r;
}

std::vector<GcaElement> cycle_representatives(const ChainComplex& cx, int n,
                                              unsigned w,
                                              const HomologyCaps& caps) {
  WeightSlice s = slice_basis(cx, n, w, caps);
  // Kernel of the outgoing differential via augmented elimination.
  Eliminator out_elim;
  std::vector<SparseVec> kernel;
  for (size_t j = 0; j < s.out_matrix.cols.size(); ++j) {
    SparseVec v = s.out_matrix.cols[j];
    SparseVec combo{{static_cast<int>(j), Rational(1)}};
    out_elim.reduce(v, &combo);
    if (v.empty()) {
      kernel.push_back(std::move(combo));
    } else {
      out_elim.insert(std::move(v), std::move(combo));
    }
  }
  // Quotient by boundaries, then a final reduced-echelon pass so the
  // representatives are canonical.
  Eliminator bound;
  for (const SparseVec& c : s.in_matrix.cols) {
    SparseVec v = c;
    bound.reduce(v);
    if (!v.empty()) bound.insert(std::move(v));
  }
  Eliminator reps;
  for (SparseVec& k : kernel) {
    bound.reduce(k);
    reps.reduce(k);
    if (!k.empty()) reps.insert(std::move(k));
  }
  std::vector<GcaElement> out;
  for (const SparseVec& r : reps.rref_rows())
    out.push_back(element_from_coords(cx, s.basis, r));
  return out;
}

std::optional<GcaElement> boundary_preimage(const ChainComplex& cx,
                                            const GcaElement& z,
                                            const HomologyCaps& caps) {
  if (z.is_zero()) return GcaElement(cx.alg);
  if (!derivation_apply(cx.d, z).is_zero())
    throw structural_error("boundary_preimage: input is not a cycle");
  int n = z.degree();
  if (n < 0) throw structural_error("boundary_preimage: mixed degree input");
  if (cx.mode == GradingMode::Graded && !z.weight_homogeneous())
    throw structural_error("boundary_preimage: input not weight-homogeneous");
  unsigned w = static_cast<unsigned>(z.weight());
  WeightSlice s = slice_basis(cx, n, w, caps);
  Eliminator elim;
  for (size_t j = 0; j < s.in_matrix.cols.size(); ++j) {
    SparseVec v = s.in_matrix.cols[j];
    SparseVec combo{{static_cast<int>(j), Rational(1)}};
    elim.reduce(v, &combo);
    if (!v.empty()) elim.insert(std::move(v), std::move(combo));
  }
  SparseVec v = element_coords(cx, s.basis, z.promoted(cx.alg));
  SparseVec combo;
  elim.reduce(v, &combo);
  if (!v.empty()) return std::nullopt;
  // Invariant gives z = -in_matrix * combo.
  SparseVec x;
  for (const auto& [i, c] : combo)
    if (c != 0) x[i] = -c;
  return element_from_coords(cx, s.above_basis, x);
}

std::string BettiWindow::tsv() const {
  std::ostringstream out;
  out << "# bounds: n<=" << max_n << " w<=" << max_w
      << (mode == GradingMode::Graded ? "" : " (filtered, one-sided)") << "\n";
  out << "n\\w";
  for (unsigned w = 0; w <= max_w; ++w) out << "\t" << w;
  out << "\n";
  for (int n = 0; n <= max_n; ++n) {
    out << n;
    for (unsigned w = 0; w <= max_w; ++w) {
      auto it = dims.find({n, w});
      out << "\t" << (it == dims.end() ? 0u : it->second);
    }
    out << "\n";
  }
  return out.str();
}

BettiWindow betti_window(const ChainComplex& cx, int max_n, unsigned max_w,
                         const HomologyCaps& caps) {
  BettiWindow win;
  win.max_n = max_n;
  win.max_w = max_w;
  win.mode = cx.mode;
  for (int n = 0; n <= max_n; ++n)
    for (unsigned w = 0; w <= max_w; ++w)
      win.dims[{n, w}] = betti(cx, n, w, caps);
  return win;
}

}  // namespace kt
