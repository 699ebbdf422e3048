#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "ramanujan/report.hpp"

namespace ramanujan::cli {

using Json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& data);

std::string to_decimal(const mpz_class& z);
std::string to_decimal(const mpq_class& q);  // "p/q", or "p" when q = 1

Json to_json(const BoundReport& r);

/// CSV cell for a double: shortest round-trip form, "nan" for NaN.
std::string csv_number(double x);

struct Artifact {
  std::string role;  // "out", "csv", ...
  std::string path;  // "-" for standard output
  std::string content;
};

/// Collects command outputs. Nothing is written until flush(), so a replay
/// can compare digests without touching the file system.
class Sink {
 public:
  void add(std::string role, std::string path, std::string content);
  const std::vector<Artifact>& artifacts() const noexcept { return items_; }
  /// Writes files and standard output. Throws Error on I/O failure.
  void flush(std::ostream& out) const;

 private:
  std::vector<Artifact> items_;
};

}  // namespace ramanujan::cli
