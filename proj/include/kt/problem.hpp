#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kt/compat.hpp"

namespace kt {

enum class ProblemKind { Koszul, Tate, Tate2, Sullivan, Gauge, Compat, JetDemo };

std::string problem_kind_name(ProblemKind k);
ProblemKind problem_kind_from(const std::string& name);

/// Line-oriented problem description: ordered [section]s of key = value
/// entries. Keys may repeat (lists). Parsing is deterministic and
/// parse(print(f)) == f.
struct ProblemSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;
  bool operator==(const ProblemSection&) const = default;
};

struct ProblemFile {
  std::vector<ProblemSection> sections;
  bool operator==(const ProblemFile&) const = default;

  ProblemKind kind() const;  // from [problem] kind = ...
  std::string print() const;
  static ProblemFile parse(const std::string& text);
  static ProblemFile load(const std::string& path);
};

struct RunOptions {
  std::optional<unsigned> weight_bound;
  std::optional<int> degree_bound;
  std::optional<unsigned> jet_order;
  std::string emit_betti;  // write the Betti table here when nonempty
  bool witnesses = false;
};

/// exit_code: 0 = all certifications passed, 1 = a mathematical check failed
/// (witness in text), 2 = usage or parse error, 3 = cap exceeded.
struct RunReport {
  int exit_code = 0;
  std::string text;
  std::optional<BettiWindow> betti;
};

RunReport run(const ProblemFile& file, const RunOptions& opts = {});

/// One-dimensional jet toy: Q[t, x, x(1), ..., x(8)] with the total
/// derivative acting by x(k) -> x(k+1), verified for all k < 8.
RunReport jet_functor_demo();

/// Engine-wide invariant sweep: d^2 slice matrices, Leibniz on random pairs,
/// commuting total derivatives, normal-form idempotence.
RunReport selftest(unsigned seed = 2024);

}  // namespace kt
