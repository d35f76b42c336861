#include "kt/problem.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace kt {

std::string problem_kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Koszul: return "KOSZUL";
    case ProblemKind::Tate: return "TATE";
    case ProblemKind::Tate2: return "TATE2";
    case ProblemKind::Sullivan: return "SULLIVAN";
    case ProblemKind::Gauge: return "GAUGE";
    case ProblemKind::Compat: return "COMPAT";
    case ProblemKind::JetDemo: return "JETDEMO";
  }
  return "?";
}

ProblemKind problem_kind_from(const std::string& name) {
  for (ProblemKind k :
       {ProblemKind::Koszul, ProblemKind::Tate, ProblemKind::Tate2,
        ProblemKind::Sullivan, ProblemKind::Gauge, ProblemKind::Compat,
        ProblemKind::JetDemo})
    if (problem_kind_name(k) == name) return k;
  throw structural_error("unknown problem kind: " + name);
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ProblemKind ProblemFile::kind() const {
  for (const auto& sec : sections)
    if (sec.name == "problem")
      for (const auto& [k, v] : sec.entries)
        if (k == "kind") return problem_kind_from(v);
  throw structural_error("missing [problem] kind");
}

std::string ProblemFile::print() const {
  std::ostringstream out;
  for (size_t i = 0; i < sections.size(); ++i) {
    if (i) out << "\n";
    out << "[" << sections[i].name << "]\n";
    for (const auto& [k, v] : sections[i].entries)
      out << k << " = " << v << "\n";
  }
  return out.str();
}

ProblemFile ProblemFile::parse(const std::string& text) {
  ProblemFile file;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw structural_error("line " + std::to_string(lineno) +
                               ": unterminated section header");
      file.sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos || file.sections.empty())
      throw structural_error("line " + std::to_string(lineno) +
                             ": expected [section] or key = value");
    file.sections.back().entries.emplace_back(trim(line.substr(0, eq)),
                                              trim(line.substr(eq + 1)));
  }
  if (file.sections.empty()) throw structural_error("empty problem file");
  return file;
}

ProblemFile ProblemFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw structural_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

namespace {

// ---- payload access helpers -------------------------------------------------

// payload construction errors are usage errors (exit 2), unlike the
// mathematical check failures thrown later (exit 1)
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Fn>
auto parse_stage(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const cap_exceeded&) {
    throw;
  } catch (const structural_error& e) {
    throw usage_error(e.what());
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  } catch (const std::out_of_range& e) {
    throw usage_error(e.what());
  }
}

const ProblemSection* find_section(const ProblemFile& f,
                                   const std::string& name) {
  for (const auto& s : f.sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<std::string> values(const ProblemFile& f, const std::string& sec,
                                const std::string& key) {
  std::vector<std::string> out;
  for (const auto& s : f.sections)
    if (s.name == sec)
      for (const auto& [k, v] : s.entries)
        if (k == key) out.push_back(v);
  return out;
}

std::string one_value(const ProblemFile& f, const std::string& sec,
                      const std::string& key) {
  auto vs = values(f, sec, key);
  if (vs.size() != 1)
    throw structural_error("expected exactly one " + sec + "." + key);
  return vs[0];
}

std::optional<std::string> opt_value(const ProblemFile& f,
                                     const std::string& sec,
                                     const std::string& key) {
  auto vs = values(f, sec, key);
  if (vs.empty()) return std::nullopt;
  if (vs.size() > 1)
    throw structural_error("duplicate " + sec + "." + key);
  return vs[0];
}

int int_value(const std::string& s) {
  size_t pos = 0;
  int v = std::stoi(s, &pos);
  if (pos != s.size()) throw structural_error("not an integer: " + s);
  return v;
}

// unknown sections or keys are rejected per kind
void check_schema(const ProblemFile& f,
                  const std::set<std::pair<std::string, std::string>>& allowed) {
  for (const auto& s : f.sections)
    for (const auto& [k, v] : s.entries) {
      if (s.name == "problem" && k == "kind") continue;
      if (!allowed.count({s.name, k}))
        throw structural_error("unknown key " + s.name + "." + k);
    }
}

std::vector<std::string> split_row(const std::string& row) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : row) {
    if (ch == ';') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

std::vector<Polynomial> parse_polys(const std::vector<std::string>& ss,
                                    int nvars) {
  std::vector<Polynomial> out;
  for (const auto& s : ss) out.push_back(Polynomial::parse(s, nvars));
  return out;
}

void emit_betti_file(const RunOptions& opts, const BettiWindow& w) {
  if (opts.emit_betti.empty()) return;
  std::ofstream out(opts.emit_betti);
  if (!out) throw structural_error("cannot write " + opts.emit_betti);
  out << w.tsv();
}

// ---- dispatchers ------------------------------------------------------------

RunReport run_koszul(const ProblemFile& f, const RunOptions& opts) {
  auto [nvars, E, wbound, dbound] = parse_stage([&] {
    check_schema(f, {{"ring", "nvars"},
                     {"equations", "eq"},
                     {"bounds", "weight"},
                     {"bounds", "degree"}});
    int nv = int_value(one_value(f, "ring", "nvars"));
    auto eqs = parse_polys(values(f, "equations", "eq"), nv);
    unsigned wb = opts.weight_bound.value_or(
        opt_value(f, "bounds", "weight")
            ? int_value(*opt_value(f, "bounds", "weight"))
            : 8);
    int db = opts.degree_bound.value_or(
        opt_value(f, "bounds", "degree")
            ? int_value(*opt_value(f, "bounds", "degree"))
            : static_cast<int>(eqs.size()));
    return std::tuple(nv, eqs, wb, db);
  });
  QuotientRing R(nvars);
  auto verdict = is_regular_sequence(R, E, wbound);
  auto state = koszul_complex(R, E);
  auto window = betti_window(state.cx, dbound, wbound);

  RunReport rep;
  std::ostringstream out;
  out << "kind: KOSZUL\n";
  out << "regularity: " << verdict.str() << "\n";
  if (!verdict.regular && opts.witnesses)
    out << "witness: " << verdict.witness.str() << "\n";
  out << window.tsv();
  rep.text = out.str();
  rep.betti = window;
  rep.exit_code = verdict.regular ? 0 : 1;
  emit_betti_file(opts, window);
  return rep;
}

RunReport run_tate(const ProblemFile& f, const RunOptions& opts,
                   bool sullivan_check) {
  auto [nvars, gens, wbound, dbound] = parse_stage([&] {
    check_schema(f, {{"ring", "nvars"},
                     {"ideal", "gen"},
                     {"bounds", "weight"},
                     {"bounds", "degree"}});
    int nv = int_value(one_value(f, "ring", "nvars"));
    auto gs = parse_polys(values(f, "ideal", "gen"), nv);
    unsigned wb = opts.weight_bound.value_or(
        opt_value(f, "bounds", "weight")
            ? int_value(*opt_value(f, "bounds", "weight"))
            : 8);
    int db = opts.degree_bound.value_or(
        opt_value(f, "bounds", "degree")
            ? int_value(*opt_value(f, "bounds", "degree"))
            : 3);
    return std::tuple(nv, gs, wb, db);
  });

  auto st = tate_resolve(QuotientRing(nvars), Ideal(nvars, gens), dbound,
                         wbound);
  RunReport rep;
  std::ostringstream out;
  out << "kind: " << (sullivan_check ? "SULLIVAN" : "TATE") << "\n";
  out << st.serialize();
  if (sullivan_check) {
    auto report = verify_sullivan_type(st);
    out << "sullivan-type: " << (report.ok ? "true" : "false") << "\n";
    for (const auto& b : report.blocks)
      if (!b.ok) out << "offender: block " << b.block << " " << b.offender << "\n";
    rep.exit_code = report.ok ? 0 : 1;
  }
  if (st.betti_cache) {  // serialize() already shows the window
    rep.betti = st.betti_cache;
    emit_betti_file(opts, *st.betti_cache);
  }
  rep.text = out.str();
  return rep;
}

RunReport run_tate2(const ProblemFile& f, const RunOptions& opts) {
  auto [nvars, P, J, s, wbound, dbound] = parse_stage([&] {
    check_schema(f, {{"ring", "nvars"},
                     {"p", "eq"},
                     {"j", "eq"},
                     {"s", "row"},
                     {"bounds", "weight"},
                     {"bounds", "degree"}});
    int nv = int_value(one_value(f, "ring", "nvars"));
    auto Ps = parse_polys(values(f, "p", "eq"), nv);
    auto Js = parse_polys(values(f, "j", "eq"), nv);
    std::vector<std::vector<Polynomial>> rows;
    for (const auto& row : values(f, "s", "row"))
      rows.push_back(parse_polys(split_row(row), nv));
    unsigned wb = opts.weight_bound.value_or(
        opt_value(f, "bounds", "weight")
            ? int_value(*opt_value(f, "bounds", "weight"))
            : 8);
    int db = opts.degree_bound.value_or(
        opt_value(f, "bounds", "degree")
            ? int_value(*opt_value(f, "bounds", "degree"))
            : 2);
    return std::tuple(nv, Ps, Js, rows, wb, db);
  });

  auto st = tate_two_step(nvars, P, J, s);
  auto window = betti_window(st.cx, dbound, wbound);
  RunReport rep;
  std::ostringstream out;
  out << "kind: TATE2\n" << st.serialize() << window.tsv();
  rep.text = out.str();
  rep.betti = window;
  emit_betti_file(opts, window);
  return rep;
}

GaugeTheory gauge_from_file(const ProblemFile& f) {
  int n = int_value(one_value(f, "jet", "n"));
  int r = int_value(one_value(f, "jet", "r"));
  int rows = int_value(one_value(f, "jet", "rows"));
  unsigned order =
      opt_value(f, "jet", "order") ? int_value(*opt_value(f, "jet", "order")) : 8;
  auto ctx = make_gauge_ctx(n, r, rows, order);
  GaugeTheory theory;
  theory.ctx = ctx;
  theory.lagrangian =
      JetPolynomial::parse(one_value(f, "lagrangian", "expr"), ctx);
  auto row_strs = values(f, "noether", "row");
  if (static_cast<int>(row_strs.size()) != rows)
    throw structural_error("noether rows do not match jet.rows");
  TotalDiffOperator R;
  R.ctx = ctx;
  R.rows = rows;
  R.cols = r;
  for (const auto& row : row_strs) {
    auto cells = split_row(row);
    if (static_cast<int>(cells.size()) != r)
      throw structural_error("noether row has wrong width");
    std::vector<OpEntry> parsed;
    for (const auto& cell : cells) parsed.push_back(parse_op_entry(cell, ctx));
    R.entries.push_back(std::move(parsed));
  }
  theory.noether = std::move(R);
  return theory;
}

RunReport run_gauge(const ProblemFile& f, const RunOptions& opts) {
  auto theory = parse_stage([&] {
    check_schema(f, {{"jet", "n"},
                     {"jet", "r"},
                     {"jet", "rows"},
                     {"jet", "order"},
                     {"lagrangian", "expr"},
                     {"noether", "row"}});
    return gauge_from_file(f);
  });
  unsigned depth = opts.jet_order.value_or(2);

  RunReport rep;
  std::ostringstream out;
  out << "kind: GAUGE\n";
  auto verdict = check_noether(theory, 2);
  out << "noether: " << (verdict.ok ? "pass" : "fail") << "\n";
  if (!verdict.ok && opts.witnesses)
    for (size_t i = 0; i < verdict.residues.size(); ++i)
      if (!verdict.residues[i].is_zero())
        out << "residue[" << i + 1 << "]: " << verdict.residues[i].str() << "\n";
  bool all = verdict.ok;

  auto kt = build_gauge_kt(theory);
  auto sq = kt_square_witness(kt, depth);
  out << "d2: " << (sq ? "fail" : "pass") << "\n";
  if (sq && opts.witnesses)
    out << "witness: " << sq->generator.str() << " -> " << sq->value.str()
        << "\n";
  all = all && !sq;

  bool dlin = verify_kt_dlinearity(kt, 50);
  out << "dlinearity: " << (dlin ? "pass" : "fail") << "\n";
  all = all && dlin;

  auto h0 = kt_h0_report(kt, 1);
  out << "h0-shell: " << (h0.ok() ? "pass" : "fail") << "\n";
  if (!h0.ok() && opts.witnesses) out << "witness: " << h0.failure << "\n";
  all = all && h0.ok();

  auto state = as_resolution_state(kt, 1);
  auto sul = verify_sullivan_type(state);
  out << "sullivan-type: " << (sul.ok ? "true" : "false") << "\n";
  all = all && sul.ok;

  rep.text = out.str();
  rep.exit_code = all ? 0 : 1;
  return rep;
}

RunReport run_compat(const ProblemFile& f, const RunOptions& opts) {
  auto spec = parse_stage([&] {
    check_schema(f, {{"jet", "n"},
                     {"jet", "r"},
                     {"jet", "order"},
                     {"builtin", "derham"},
                     {"psi", "expr"},
                     {"delta", "row"}});
    unsigned order = opt_value(f, "jet", "order")
                         ? int_value(*opt_value(f, "jet", "order"))
                         : 8;
    if (auto dr = opt_value(f, "builtin", "derham"))
      return derham_spec(int_value(*dr), order);
    int n = int_value(one_value(f, "jet", "n"));
    int r = int_value(one_value(f, "jet", "r"));
    std::vector<std::vector<std::vector<std::string>>> deltas;
    for (const auto& s : f.sections)
      if (s.name == "delta") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [k, v] : s.entries)
          if (k == "row") rows.push_back(split_row(v));
        deltas.push_back(std::move(rows));
      }
    return make_compat_spec(n, r, values(f, "psi", "expr"), deltas, order);
  });

  RunReport rep;
  std::ostringstream out;
  out << "kind: COMPAT\n";
  auto verdict = validate_compat(spec);
  out << "compat: " << (verdict.ok ? "pass" : "fail") << "\n";
  if (!verdict.ok) {
    if (opts.witnesses) out << "witness: " << verdict.failure << "\n";
    rep.text = out.str();
    rep.exit_code = 1;
    return rep;
  }
  auto kt = build_compat_kt(spec);
  auto sq = kt_square_witness(kt.delta, opts.jet_order.value_or(1));
  out << "d2: " << (sq ? "fail" : "pass") << "\n";
  auto state = as_resolution_state(kt, 1);
  auto sul = verify_sullivan_type(state);
  out << "sullivan-type: " << (sul.ok ? "true" : "false") << "\n";
  rep.text = out.str();
  rep.exit_code = (!sq && sul.ok) ? 0 : 1;
  return rep;
}

}  // namespace

RunReport jet_functor_demo() {
  auto ctx = std::make_shared<const JetContext>(JetContext{1, 1, {}, 8});
  RunReport rep;
  std::ostringstream out;
  out << "kind: JETDEMO\n";
  bool ok = true;

  // total derivative shifts the tower: x(k) -> x(k+1), k < 8
  for (unsigned k = 0; k < 8; ++k) {
    JetVar xk{JetKind::Field, 1, 0, {k}};
    JetVar xk1{JetKind::Field, 1, 0, {k + 1}};
    auto lhs = total_derivative(1, JetPolynomial::var(ctx, xk));
    if (lhs != JetPolynomial::var(ctx, xk1)) ok = false;
  }
  out << "tower action x(k) -> x(k+1), k < 8: " << (ok ? "pass" : "fail")
      << "\n";

  auto t = JetPolynomial::var(ctx, JetVar{JetKind::Base, 1, 0, {}});
  bool base_ok =
      total_derivative(1, t) == JetPolynomial::constant(ctx, 1);
  out << "base action d/dt t = 1: " << (base_ok ? "pass" : "fail") << "\n";

  auto x0 = JetPolynomial::var(ctx, JetVar{JetKind::Field, 1, 0, {0}});
  auto x1 = JetPolynomial::var(ctx, JetVar{JetKind::Field, 1, 0, {1}});
  auto x2 = JetPolynomial::var(ctx, JetVar{JetKind::Field, 1, 0, {2}});
  bool leibniz_ok = total_derivative(1, x0 * x1) == x1 * x1 + x0 * x2;
  out << "product rule on x*x(1): " << (leibniz_ok ? "pass" : "fail") << "\n";

  rep.exit_code = (ok && base_ok && leibniz_ok) ? 0 : 1;
  rep.text = out.str();
  return rep;
}

namespace {

Polynomial random_poly(std::mt19937& rng, int nvars, unsigned max_deg,
                       int max_terms) {
  Polynomial p(nvars);
  int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    Exponents e(static_cast<size_t>(nvars), 0);
    for (auto& x : e) x = rng() % (max_deg + 1);
    int num = static_cast<int>(rng() % 7) - 3;
    if (num == 0) num = 1;
    p.add_term(e, Rational(num, 1 + static_cast<int>(rng() % 3)));
  }
  return p;
}

JetPolynomial random_jet_poly(std::mt19937& rng, const JetCtxPtr& ctx) {
  std::vector<JetVar> pool;
  for (int i = 1; i <= ctx->n; ++i)
    pool.push_back(JetVar{JetKind::Base, i, 0, {}});
  for (const auto& mi : multi_indices_up_to(ctx->n, 2))
    pool.push_back(JetVar{JetKind::Field, 1, 0, mi});
  JetPolynomial p(ctx);
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    auto term = JetPolynomial::constant(
        ctx, Rational(1 + static_cast<int>(rng() % 5), 1 + rng() % 2));
    int factors = static_cast<int>(rng() % 3);
    for (int k = 0; k < factors; ++k)
      term = term * JetPolynomial::var(ctx, pool[rng() % pool.size()]);
    p = p + term;
  }
  return p;
}

bool selftest_d2_slices(std::ostringstream& out) {
  auto check_state = [&](const ResolutionState& st, int max_n, unsigned max_w) {
    for (int n = 2; n <= max_n; ++n)
      for (unsigned w = 0; w <= max_w; ++w) {
        auto sl = slice_basis(st.cx, n, w);
        auto below = slice_basis(st.cx, n - 1, w);
        for (const auto& col : sl.out_matrix.cols) {
          SparseVec acc;
          for (const auto& [i, c] : col)
            for (const auto& [j, d] : below.out_matrix.cols[i]) {
              Rational add = c * d;
              auto it = acc.find(j);
              if (it == acc.end()) {
                acc.emplace(j, add);
              } else {
                it->second += add;
                if (it->second == 0) acc.erase(it);
              }
            }
          if (!acc.empty()) return false;
        }
      }
    return true;
  };
  QuotientRing R3(3);
  std::vector<Polynomial> E = {Polynomial::parse("x1", 3),
                               Polynomial::parse("x2", 3),
                               Polynomial::parse("x3", 3)};
  auto koszul = koszul_complex(R3, E);
  auto monomial = tate_resolve(
      QuotientRing(3),
      Ideal(3, {Polynomial::parse("x1*x2", 3), Polynomial::parse("x1*x3", 3)}),
      2, 6);
  bool ok = check_state(koszul, 3, 6) && check_state(monomial, 2, 6);
  out << "d2 slice matrices: " << (ok ? "pass" : "fail") << "\n";
  return ok;
}

bool selftest_leibniz(std::ostringstream& out, std::mt19937& rng, int pairs) {
  auto st = tate_resolve(
      QuotientRing(3),
      Ideal(3, {Polynomial::parse("x1*x2", 3), Polynomial::parse("x1*x3", 3)}),
      2, 6);
  auto alg = st.cx.alg;
  auto rand_elem = [&]() {
    GcaElement e = GcaElement::scalar(alg, random_poly(rng, 3, 2, 2));
    int factors = static_cast<int>(rng() % 3);
    for (int k = 0; k < factors; ++k)
      e = gca_mul(e, GcaElement::generator(
                         alg, rng() % static_cast<unsigned>(
                                          alg->generators().size())));
    return e;
  };
  for (int i = 0; i < pairs; ++i) {
    auto a = rand_elem();
    auto b = rand_elem();
    auto lhs = derivation_apply(st.cx.d, gca_mul(a, b));
    auto da = derivation_apply(st.cx.d, a);
    auto db = derivation_apply(st.cx.d, b);
    int deg = a.degree();
    auto sgn_adb = (deg >= 0 && deg % 2 == 1) ? -gca_mul(a, db) : gca_mul(a, db);
    // mixed-degree a: split termwise to apply the sign correctly
    if (deg < 0 && !a.is_zero()) {
      GcaElement acc(alg);
      for (const auto& [word, c] : a.terms()) {
        GcaElement piece(alg);
        piece.add_term(word, c);
        int d = piece.degree();
        auto part = gca_mul(piece, db);
        acc = (d % 2 == 1) ? acc - part : acc + part;
      }
      sgn_adb = acc;
    }
    if (lhs != gca_mul(da, b) + sgn_adb) {
      out << "leibniz: fail\n";
      return false;
    }
  }
  out << "leibniz on " << pairs << " random pairs: pass\n";
  return true;
}

bool selftest_commuting_derivatives(std::ostringstream& out, std::mt19937& rng,
                                    int count) {
  auto ctx = std::make_shared<const JetContext>(JetContext{2, 1, {}, 8});
  for (int i = 0; i < count; ++i) {
    auto F = random_jet_poly(rng, ctx);
    auto d12 = total_derivative(1, total_derivative(2, F));
    auto d21 = total_derivative(2, total_derivative(1, F));
    if (d12 != d21) {
      out << "commuting total derivatives: fail\n";
      return false;
    }
  }
  out << "commuting total derivatives on " << count << " polynomials: pass\n";
  return true;
}

bool selftest_nf_idempotent(std::ostringstream& out, std::mt19937& rng,
                            int count) {
  QuotientRing R(Ideal(2, {Polynomial::parse("x1^2 - x2", 2),
                           Polynomial::parse("x2^3", 2)}));
  for (int i = 0; i < count; ++i) {
    auto p = random_poly(rng, 2, 4, 4);
    auto nf = R.normal_form(p);
    if (R.normal_form(nf) != nf) {
      out << "normal form idempotence: fail\n";
      return false;
    }
  }
  out << "normal form idempotence on " << count << " polynomials: pass\n";
  return true;
}

}  // namespace

RunReport selftest(unsigned seed) {
  std::mt19937 rng(seed);
  RunReport rep;
  std::ostringstream out;
  out << "kind: SELFTEST\n";
  bool ok = selftest_d2_slices(out);
  ok = selftest_leibniz(out, rng, 1000) && ok;
  ok = selftest_commuting_derivatives(out, rng, 200) && ok;
  ok = selftest_nf_idempotent(out, rng, 1000) && ok;
  rep.exit_code = ok ? 0 : 1;
  rep.text = out.str();
  return rep;
}

RunReport run(const ProblemFile& file, const RunOptions& opts) {
  ProblemKind kind;
  try {
    kind = file.kind();
  } catch (const structural_error& e) {
    return {2, std::string("error: ") + e.what() + "\n", std::nullopt};
  }
  try {
    switch (kind) {
      case ProblemKind::Koszul: return run_koszul(file, opts);
      case ProblemKind::Tate: return run_tate(file, opts, false);
      case ProblemKind::Sullivan: return run_tate(file, opts, true);
      case ProblemKind::Tate2: return run_tate2(file, opts);
      case ProblemKind::Gauge: return run_gauge(file, opts);
      case ProblemKind::Compat: return run_compat(file, opts);
      case ProblemKind::JetDemo: return jet_functor_demo();
    }
  } catch (const usage_error& e) {
    return {2, std::string("error: ") + e.what() + "\n", std::nullopt};
  } catch (const cap_exceeded& e) {
    return {3, std::string("cap exceeded: ") + e.what() + "\n", std::nullopt};
  } catch (const structural_error& e) {
    return {1, std::string("check failed: ") + e.what() + "\n", std::nullopt};
  }
  return {2, "error: unhandled kind\n", std::nullopt};
}

}  // namespace kt
