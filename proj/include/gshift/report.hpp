#pragma once

#include <string>
#include <vector>

namespace gshift {

// One CLI run produces one report.  Reports are byte-stable for identical
// inputs: wall time is kept out of both renderings (the CLI prints it to
// stderr).  The machine format is one key=value per line in insertion
// order; the human format adds prose notes.
struct RunReport {
  std::string operation;
  std::string target;
  std::string input_path;
  std::string input_digest;  // "fnv1a:<16 hex>"
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> notes;
  double wall_ms = 0.0;  // never serialized

  void add(const std::string& key, const std::string& value);
  void note(const std::string& line);
};

std::string render_machine(const RunReport& r);
std::string render_human(const RunReport& r);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace gshift
