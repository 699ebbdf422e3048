#pragma once

// One checked inequality: both sides, the hypotheses it depends on, and
// the verdict. The margin is oriented so that pass <=> margin >= 0.

#include <string>
#include <utility>
#include <vector>

namespace ramanujan {

enum class Verdict { kPass, kFail, kNotApplicable, kInformational };

const char* to_string(Verdict v);

struct Hypothesis {
  std::string name;
  bool holds = false;
};

struct BoundReport {
  std::string name;
  std::string relation;  // e.g. "lhs <= rhs", "lhs < value < rhs"
  std::vector<Hypothesis> hypotheses;
  double lhs = 0;
  double rhs = 0;
  double value = 0;  // middle term of two-sided relations
  double margin = 0;
  double tolerance = 0;
  Verdict verdict = Verdict::kNotApplicable;
  std::vector<std::pair<std::string, std::string>> constants;
  std::string note;

  bool hypotheses_hold() const {
    for (const auto& h : hypotheses)
      if (!h.holds) return false;
    return true;
  }
  bool passed() const { return verdict == Verdict::kPass; }
  bool failed() const { return verdict == Verdict::kFail; }
};

/// Sets the verdict: not applicable if a hypothesis fails, otherwise pass
/// when `holds` is true. `holds` should already account for tolerance.
void settle(BoundReport& report, bool holds);

}  // namespace ramanujan
