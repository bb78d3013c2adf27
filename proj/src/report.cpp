#include "gshift/report.hpp"

#include <cstdint>

namespace gshift {

namespace {

// serialized values are single-line
std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

void RunReport::add(const std::string& key, const std::string& value) {
  fields.push_back({key, value});
}

void RunReport::note(const std::string& line) { notes.push_back(line); }

std::string render_machine(const RunReport& r) {
  std::string s;
  s += "operation=" + one_line(r.operation) + "\n";
  s += "target=" + one_line(r.target) + "\n";
  if (!r.input_path.empty()) s += "input=" + one_line(r.input_path) + "\n";
  if (!r.input_digest.empty()) s += "digest=" + one_line(r.input_digest) + "\n";
  for (const auto& [k, v] : r.fields) s += one_line(k) + "=" + one_line(v) + "\n";
  for (const auto& n : r.notes) s += "note=" + one_line(n) + "\n";
  s += std::string("pass=") + (r.pass ? "true" : "false") + "\n";
  return s;
}

std::string render_human(const RunReport& r) {
  std::string s = "== " + r.operation;
  if (!r.target.empty()) s += ": " + r.target;
  s += " ==\n";
  if (!r.input_path.empty()) {
    s += "input: " + r.input_path;
    if (!r.input_digest.empty()) s += " (" + r.input_digest + ")";
    s += "\n";
  }
  for (const auto& [k, v] : r.fields) s += k + ": " + v + "\n";
  if (!r.notes.empty()) {
    s += "notes:\n";
    for (const auto& n : r.notes) s += "  - " + n + "\n";
  }
  s += std::string("result: ") + (r.pass ? "PASS" : "FAIL") + "\n";
  return s;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace gshift
