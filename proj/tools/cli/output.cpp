#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include <openssl/evp.h>

#include "ramanujan/errors.hpp"

namespace ramanujan::cli {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[digest[i] >> 4];
    s += hex[digest[i] & 15];
  }
  return s;
}

std::string to_decimal(const mpz_class& z) { return z.get_str(10); }

std::string to_decimal(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str(10);
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

Json number(double x) {
  if (std::isfinite(x)) return x;
  return csv_number(x);
}

}  // namespace

Json to_json(const BoundReport& r) {
  Json j;
  j["name"] = r.name;
  j["relation"] = r.relation;
  j["verdict"] = to_string(r.verdict);
  j["lhs"] = number(r.lhs);
  j["value"] = number(r.value);
  j["rhs"] = number(r.rhs);
  j["margin"] = number(r.margin);
  j["tolerance"] = number(r.tolerance);
  Json hyp = Json::array();
  for (const auto& h : r.hypotheses) hyp.push_back({{"name", h.name}, {"holds", h.holds}});
  j["hypotheses"] = hyp;
  Json consts = Json::object();
  for (const auto& [k, v] : r.constants) consts[k] = v;
  j["constants"] = consts;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

void Sink::add(std::string role, std::string path, std::string content) {
  items_.push_back({std::move(role), std::move(path), std::move(content)});
}

void Sink::flush(std::ostream& out) const {
  for (const auto& a : items_) {
    if (a.path == "-") {
      out << a.content;
      continue;
    }
    std::ofstream f(a.path, std::ios::binary);
    if (!f) throw Error("cannot open " + a.path + " for writing");
    f << a.content;
    if (!f) throw Error("write failed: " + a.path);
  }
  out.flush();
}

}  // namespace ramanujan::cli
