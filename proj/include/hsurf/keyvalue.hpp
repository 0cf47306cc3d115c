#pragma once

// Line-oriented "key = value" text with [section] headers, shared by domain
// files, run configs and manifests.

#include <stdexcept>
#include <string>
#include <vector>

namespace hsurf {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct KeyValueEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses the whole text. Full-line comments start with '#'. Keys must be
/// unique within a section.
std::vector<KeyValueEntry> parse_key_value(const std::string& text);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
/// Strict parse of a whole string as a double.
double parse_double(const std::string& s, int line = 0);
long parse_long(const std::string& s, int line = 0);

std::vector<std::string> split_ws(const std::string& s);
std::string trim(const std::string& s);

}  // namespace hsurf
