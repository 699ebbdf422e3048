#include "ramanujan/report.hpp"

namespace ramanujan {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kNotApplicable:
      return "not applicable";
    case Verdict::kInformational:
      return "informational";
  }
  return "?";
}

void settle(BoundReport& report, bool holds) {
  if (!report.hypotheses_hold())
    report.verdict = Verdict::kNotApplicable;
  else
    report.verdict = holds ? Verdict::kPass : Verdict::kFail;
}

}  // namespace ramanujan
