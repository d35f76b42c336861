// Command-line driver: one subcommand per problem kind, plus the jet demo
// and the engine self-test. Exit codes: 0 pass, 1 failed mathematical check,
// 2 usage or parse error, 3 cap exceeded.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kt/problem.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact Koszul-Tate resolution toolkit"};
  app.require_subcommand(1);

  std::string file_path;
  unsigned weight_bound = 0;
  int degree_bound = 0;
  unsigned jet_order = 0;
  std::string emit_betti;
  bool witnesses = false;
  bool has_wb = false, has_db = false, has_jo = false;

  const std::pair<const char*, kt::ProblemKind> file_kinds[] = {
      {"koszul", kt::ProblemKind::Koszul},
      {"tate", kt::ProblemKind::Tate},
      {"tate2", kt::ProblemKind::Tate2},
      {"sullivan", kt::ProblemKind::Sullivan},
      {"gauge", kt::ProblemKind::Gauge},
      {"compat", kt::ProblemKind::Compat},
      {"jetdemo", kt::ProblemKind::JetDemo},
  };
  for (const auto& [name, kind] : file_kinds) {
    auto* sub = app.add_subcommand(
        name, std::string("run a ") + kt::problem_kind_name(kind) +
                  " problem file");
    sub->add_option("file", file_path, "problem file")->required();
    sub->add_option("--weight-bound", weight_bound, "certified weight bound")
        ->each([&](const std::string&) { has_wb = true; });
    sub->add_option("--degree-bound", degree_bound,
                    "homological degree bound")
        ->each([&](const std::string&) { has_db = true; });
    sub->add_option("--jet-order", jet_order, "jet-order check depth")
        ->each([&](const std::string&) { has_jo = true; });
    sub->add_option("--emit-betti", emit_betti, "write the Betti table here");
    sub->add_flag("--witnesses", witnesses, "print failure witnesses");
  }
  auto* selftest_cmd =
      app.add_subcommand("selftest", "run the engine invariant sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (selftest_cmd->parsed()) {
    auto rep = kt::selftest();
    std::cout << rep.text;
    return rep.exit_code;
  }

  kt::RunOptions opts;
  if (has_wb) opts.weight_bound = weight_bound;
  if (has_db) opts.degree_bound = degree_bound;
  if (has_jo) opts.jet_order = jet_order;
  opts.emit_betti = emit_betti;
  opts.witnesses = witnesses;

  kt::ProblemFile file;
  kt::ProblemKind expected = kt::ProblemKind::JetDemo;
  for (const auto& [name, kind] : file_kinds)
    if (app.get_subcommand(name)->parsed()) expected = kind;
  try {
    file = kt::ProblemFile::load(file_path);
    if (file.kind() != expected) {
      std::cerr << "error: file is " << kt::problem_kind_name(file.kind())
                << ", subcommand expects " << kt::problem_kind_name(expected)
                << "\n";
      return 2;
    }
  } catch (const kt::structural_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto rep = kt::run(file, opts);
  std::cout << rep.text;
  return rep.exit_code;
}
