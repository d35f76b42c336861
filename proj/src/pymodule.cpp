#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kt/problem.hpp"

namespace py = pybind11;
using namespace kt;

namespace {

RunOptions make_options(std::optional<unsigned> weight_bound,
                        std::optional<int> degree_bound,
                        std::optional<unsigned> jet_order, bool witnesses) {
  RunOptions opts;
  opts.weight_bound = weight_bound;
  opts.degree_bound = degree_bound;
  opts.jet_order = jet_order;
  opts.witnesses = witnesses;
  return opts;
}

py::dict window_dict(const BettiWindow& w) {
  py::dict d;
  for (const auto& [key, dim] : w.dims)
    d[py::make_tuple(key.first, key.second)] = dim;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact Koszul-Tate resolution engine";

  py::register_exception<structural_error>(m, "StructuralError");
  py::register_exception<cap_exceeded>(m, "CapExceeded");

  m.def(
      "run_problem",
      [](const std::string& text, std::optional<unsigned> weight_bound,
         std::optional<int> degree_bound, std::optional<unsigned> jet_order,
         bool witnesses) {
        RunReport rep;
        try {
          auto file = ProblemFile::parse(text);
          rep = run(file, make_options(weight_bound, degree_bound, jet_order,
                                       witnesses));
        } catch (const structural_error& e) {
          return py::make_tuple(2, std::string("error: ") + e.what() + "\n");
        }
        return py::make_tuple(rep.exit_code, rep.text);
      },
      py::arg("text"), py::arg("weight_bound") = std::nullopt,
      py::arg("degree_bound") = std::nullopt,
      py::arg("jet_order") = std::nullopt, py::arg("witnesses") = false,
      "Run a problem file given as text; returns (exit_code, report).");

  m.def(
      "poly_roundtrip",
      [](const std::string& text, int nvars) {
        return Polynomial::parse(text, nvars).str();
      },
      py::arg("text"), py::arg("nvars"),
      "Parse a polynomial and print its canonical form.");

  m.def(
      "regularity",
      [](int nvars, const std::vector<std::string>& eqs, unsigned bound) {
        std::vector<Polynomial> E;
        for (const auto& s : eqs) E.push_back(Polynomial::parse(s, nvars));
        return is_regular_sequence(QuotientRing(nvars), E, bound).str();
      },
      py::arg("nvars"), py::arg("equations"), py::arg("weight_bound") = 8,
      "Bounded regularity verdict for a sequence of ring elements.");

  m.def(
      "koszul_betti",
      [](int nvars, const std::vector<std::string>& eqs, int degree_bound,
         unsigned weight_bound) {
        std::vector<Polynomial> E;
        for (const auto& s : eqs) E.push_back(Polynomial::parse(s, nvars));
        auto st = koszul_complex(QuotientRing(nvars), E);
        return window_dict(betti_window(st.cx, degree_bound, weight_bound));
      },
      py::arg("nvars"), py::arg("equations"), py::arg("degree_bound"),
      py::arg("weight_bound"),
      "Betti table {(degree, weight): dim} of a Koszul complex.");

  m.def(
      "tate_betti",
      [](int nvars, const std::vector<std::string>& gens, int degree_bound,
         unsigned weight_bound) {
        std::vector<Polynomial> G;
        for (const auto& s : gens) G.push_back(Polynomial::parse(s, nvars));
        auto st = tate_resolve(QuotientRing(nvars), Ideal(nvars, G),
                               degree_bound, weight_bound);
        if (!st.betti_cache) throw cap_exceeded("window not certified");
        return window_dict(*st.betti_cache);
      },
      py::arg("nvars"), py::arg("generators"), py::arg("degree_bound"),
      py::arg("weight_bound"),
      "Certified Betti window of an adjunction-resolved ideal.");

  m.def(
      "euler_lagrange",
      [](int n, int r, const std::string& lagrangian, int field) {
        auto ctx =
            std::make_shared<const JetContext>(JetContext{n, r, {}, 8});
        return kt::euler_lagrange(JetPolynomial::parse(lagrangian, ctx), field)
            .str();
      },
      py::arg("n"), py::arg("r"), py::arg("lagrangian"), py::arg("field"),
      "Euler-Lagrange expression of a jet Lagrangian for one field.");

  m.def(
      "total_derivative",
      [](int n, int r, const std::string& expr, int direction) {
        auto ctx =
            std::make_shared<const JetContext>(JetContext{n, r, {}, 8});
        return kt::total_derivative(direction,
                                    JetPolynomial::parse(expr, ctx))
            .str();
      },
      py::arg("n"), py::arg("r"), py::arg("expr"), py::arg("direction"),
      "Total derivative of a jet polynomial.");

  m.def("jet_demo", [] {
    auto rep = jet_functor_demo();
    return py::make_tuple(rep.exit_code, rep.text);
  });

  m.def("selftest", [] {
    auto rep = kt::selftest();
    return py::make_tuple(rep.exit_code, rep.text);
  });
}
