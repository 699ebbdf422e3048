#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "output.hpp"

namespace ramanujan::cli {

inline constexpr const char* kToolVersion = "0.9.0";

enum ExitCode { kOk = 0, kError = 1, kNotApplicable = 2 };

struct Execution {
  int code = kOk;
  Sink sink;
  Json manifest;           // null when the arguments did not parse
  std::string manifest_path;  // empty: no manifest is written
};

/// Parses and runs one command without writing anything. Diagnostics go
/// to err, help text to out.
Execution execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// execute(), then writes outputs and the manifest.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramanujan::cli
