#include "hsurf/keyvalue.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <utility>

namespace hsurf {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::vector<KeyValueEntry> parse_key_value(const std::string& text) {
  std::vector<KeyValueEntry> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::istringstream is(text);
  std::string section;
  int lineno = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ParseError(lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
    KeyValueEntry e{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (e.key.empty()) throw ParseError(lineno, "empty key");
    if (!seen.insert({e.section, e.key}).second)
      throw ParseError(lineno, "duplicate key '" + e.key + "' in section [" + e.section + "]");
    out.push_back(std::move(e));
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, int line) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw ParseError(line, "not a number: '" + s + "'");
  return v;
}

long parse_long(const std::string& s, int line) {
  const std::string t = trim(s);
  long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw ParseError(line, "not an integer: '" + s + "'");
  return v;
}

}  // namespace hsurf
