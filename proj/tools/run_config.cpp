#include "run_config.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "hsurf/keyvalue.hpp"

namespace hsurf::cli {

ConfigError::ConfigError(const std::string& field, int line, const std::string& msg)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string("override: ")) + field +
                         ": " + msg),
      field_(field),
      line_(line) {}

namespace {

using Setter = std::function<void(RunConfig&, const std::string&, int)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
  std::string name;  // section.key
  Setter set;
  Getter get;
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + format_double(x);
  return s;
}

std::vector<double> parse_list(const std::string& s, int line) {
  std::vector<double> out;
  for (const auto& t : split_ws(s)) out.push_back(parse_double(t, line));
  return out;
}

bool parse_bool(const std::string& s, int line) {
  if (s == "true" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "no" || s == "off") return false;
  throw ParseError(line, "expected true or false, got '" + s + "'");
}

int parse_int(const std::string& s, int line) {
  const long v = parse_long(s, line);
  if (v < -1000000000L || v > 1000000000L) throw ParseError(line, "integer out of range");
  return static_cast<int>(v);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Field real(std::string name, double RunConfig::*member) {
  return {std::move(name), [member](RunConfig& c, const std::string& v, int line) { c.*member = parse_double(v, line); },
          [member](const RunConfig& c) { return format_double(c.*member); }};
}

Field integer(std::string name, int RunConfig::*member) {
  return {std::move(name), [member](RunConfig& c, const std::string& v, int line) { c.*member = parse_int(v, line); },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      {"family.name", [](RunConfig& c, const std::string& v, int) { c.family = v; },
       [](const RunConfig& c) { return c.family; }},
      integer("family.n", &RunConfig::n),
      integer("family.m", &RunConfig::m),
      real("family.theta", &RunConfig::theta),
      real("family.h", &RunConfig::h),
      {"family.f", [](RunConfig& c, const std::string& v, int) { c.f = v; },
       [](const RunConfig& c) { return c.f; }},
      {"family.qs", [](RunConfig& c, const std::string& v, int line) { c.qs = parse_list(v, line); },
       [](const RunConfig& c) { return join(c.qs); }},
      {"mesh.ell", [](RunConfig& c, const std::string& v, int line) { c.mesh.ell = parse_double(v, line); },
       [](const RunConfig& c) { return format_double(c.mesh.ell); }},
      {"mesh.delta", [](RunConfig& c, const std::string& v, int line) { c.mesh.delta = parse_double(v, line); },
       [](const RunConfig& c) { return format_double(c.mesh.delta); }},
      {"mesh.eps_arc", [](RunConfig& c, const std::string& v, int line) { c.mesh.eps_arc = parse_double(v, line); },
       [](const RunConfig& c) { return format_double(c.mesh.eps_arc); }},
      {"mesh.smoothing", [](RunConfig& c, const std::string& v, int line) { c.mesh.smoothing = parse_int(v, line); },
       [](const RunConfig& c) { return std::to_string(c.mesh.smoothing); }},
      {"solver.tol", [](RunConfig& c, const std::string& v, int line) { c.solver.tol = parse_double(v, line); },
       [](const RunConfig& c) { return format_double(c.solver.tol); }},
      {"solver.max_iterations",
       [](RunConfig& c, const std::string& v, int line) { c.solver.max_iterations = parse_int(v, line); },
       [](const RunConfig& c) { return std::to_string(c.solver.max_iterations); }},
      {"solver.kernel",
       [](RunConfig& c, const std::string& v, int line) {
         if (v == "serial")
           c.solver.kernel = Kernel::Serial;
         else if (v == "parallel")
           c.solver.kernel = Kernel::Parallel;
         else
           throw ParseError(line, "kernel must be serial or parallel");
       },
       [](const RunConfig& c) { return std::string(c.solver.kernel == Kernel::Serial ? "serial" : "parallel"); }},
      {"assembly.truncations",
       [](RunConfig& c, const std::string& v, int line) { c.truncations = parse_list(v, line); },
       [](const RunConfig& c) { return join(c.truncations); }},
      integer("assembly.word_length", &RunConfig::word_length),
      {"analysis.embedding",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.embedding = parse_bool(v, line); },
       [](const RunConfig& c) { return bool_text(c.analysis.embedding); }},
      {"analysis.separation",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.separation = parse_bool(v, line); },
       [](const RunConfig& c) { return bool_text(c.analysis.separation); }},
      {"analysis.curvature",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.curvature = parse_bool(v, line); },
       [](const RunConfig& c) { return bool_text(c.analysis.curvature); }},
      {"analysis.accumulation",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.accumulation = parse_bool(v, line); },
       [](const RunConfig& c) { return bool_text(c.analysis.accumulation); }},
      {"analysis.separation_samples",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.separation_samples = parse_int(v, line); },
       [](const RunConfig& c) { return std::to_string(c.analysis.separation_samples); }},
      {"analysis.separation_margin",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.separation_margin = parse_double(v, line); },
       [](const RunConfig& c) { return format_double(c.analysis.separation_margin); }},
      {"analysis.arc_levels",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.arc_levels = parse_list(v, line); },
       [](const RunConfig& c) { return join(c.analysis.arc_levels); }},
      {"analysis.accumulation_eps",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.accumulation_eps = parse_double(v, line); },
       [](const RunConfig& c) { return format_double(c.analysis.accumulation_eps); }},
      {"analysis.accumulation_heights",
       [](RunConfig& c, const std::string& v, int line) { c.analysis.accumulation_heights = parse_list(v, line); },
       [](const RunConfig& c) { return join(c.analysis.accumulation_heights); }},
      {"output.dir", [](RunConfig& c, const std::string& v, int) { c.output_dir = v; },
       [](const RunConfig& c) { return c.output_dir; }},
  };
  return table;
}

const Field* find_field(const std::string& name) {
  for (const auto& f : fields())
    if (f.name == name) return &f;
  return nullptr;
}

void set_field(RunConfig& c, const std::string& name, const std::string& value, int line) {
  const Field* f = find_field(name);
  if (!f) throw ParseError(line, "unknown key '" + name + "'");
  f->set(c, value, line);
  c.lines[name] = line;
}

bool is_infinite_text(const std::string& f) { return f == "plus-infinity" || f == "minus-infinity"; }

// End angle of the ideal arc carrying f.
double arc_end(const RunConfig& c) {
  if (c.family == "helicoidal") return std::numbers::pi / c.m;
  return c.theta;
}

}  // namespace

std::vector<std::string> config_fields() {
  std::vector<std::string> out;
  for (const auto& f : fields()) out.push_back(f.name);
  return out;
}

RunConfig parse_run_config(const std::string& text) {
  RunConfig c;
  for (const auto& kv : parse_key_value(text)) {
    if (kv.section == "results") continue;
    if (kv.section.empty()) throw ParseError(kv.line, "key '" + kv.key + "' outside a section");
    set_field(c, kv.section + "." + kv.key, kv.value, kv.line);
  }
  validate(c);
  return c;
}

void apply_override(RunConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ParseError(0, "override must be section.key=value: '" + assignment + "'");
  const std::string name = trim(assignment.substr(0, eq));
  set_field(c, name, trim(assignment.substr(eq + 1)), 0);
}

FamilyParams family_params(const RunConfig& c) {
  FamilyParams p;
  p.family = c.family;
  p.n = c.n;
  p.m = c.m;
  p.theta = c.theta;
  p.h = c.h;
  p.qs = c.qs;
  if (!c.f.empty()) {
    const int line = c.lines.count("family.f") ? c.lines.at("family.f") : 0;
    const auto tok = split_ws(c.f);
    if (!tok.empty() && tok[0] == "linear") {
      if (tok.size() < 2 || tok.size() > 3) throw ParseError(line, "linear data takes a slope and an optional count");
      const int count = tok.size() == 3 ? static_cast<int>(parse_long(tok[2], line)) : 64;
      if (count < 2) throw ParseError(line, "linear data needs at least 2 samples");
      p.f = linear_boundary_function(parse_double(tok[1], line), arc_end(c), count);
    } else {
      p.f = parse_edge_data(c.f, line);
    }
  }
  return p;
}

AssemblyOptions assembly_options(const RunConfig& c) {
  AssemblyOptions o;
  o.grading = c.mesh;
  o.truncations = c.truncations;
  o.word_length = c.word_length;
  o.solver = c.solver;
  return o;
}

void validate(const RunConfig& c) {
  auto line_of = [&](const std::string& f) { return c.lines.count(f) ? c.lines.at(f) : 0; };
  auto fail = [&](const std::string& f, const std::string& value, const std::string& msg) {
    throw ConfigError(f, line_of(f), f.substr(f.find('.') + 1) + " = " + value + " " + msg);
  };
  bool known = false;
  for (const auto& f : kFamilies) known |= f == c.family;
  if (!known) fail("family.name", c.family, "is not a known family (see 'hsurf families')");

  const bool rotational = c.family == "helicoidal-scherk" || c.family == "helicoidal";
  if (c.family == "helicoidal-scherk" && c.n < 1) fail("family.n", std::to_string(c.n), "must be a positive integer");
  if (c.family == "helicoidal" && c.m < 1) fail("family.m", std::to_string(c.m), "must be a positive integer");
  if (!rotational && !(c.theta > 0.0 && c.theta < std::numbers::pi))
    fail("family.theta", format_double(c.theta), "must lie in (0, pi)");
  if (c.family != "non-periodic") {
    if (c.h == 0.0) fail("family.h", "0", "is the Scherk graph boundary case; the construction needs h > 0");
    if (!(c.h > 0.0) || !std::isfinite(c.h)) fail("family.h", format_double(c.h), "must be positive");
  }
  const bool needs_f = c.family == "helicoidal" || c.family == "axis-at-infinity-helicoidal" ||
                       c.family == "non-periodic";
  if (needs_f && c.f.empty()) fail("family.f", "(unset)", "is required for family " + c.family);
  if (!needs_f && !c.f.empty()) fail("family.f", c.f, "is not used by family " + c.family);
  if (needs_f && is_infinite_text(trim(c.f))) fail("family.f", c.f, "must be finite data");
  if (!c.qs.empty() && c.family != "helicoidal-scherk" && c.family != "axis-at-infinity-scherk")
    fail("family.qs", join(c.qs), "is only used by the Scherk type families");

  if (!(c.mesh.ell > 0.0 && c.mesh.ell <= 1.0)) fail("mesh.ell", format_double(c.mesh.ell), "must lie in (0, 1]");
  if (!(c.mesh.delta > 0.0 && c.mesh.delta < 1.0)) fail("mesh.delta", format_double(c.mesh.delta), "must lie in (0, 1)");
  if (!(c.mesh.eps_arc > 0.0 && c.mesh.eps_arc < 0.5))
    fail("mesh.eps_arc", format_double(c.mesh.eps_arc), "must lie in (0, 0.5)");
  if (c.mesh.smoothing < 0) fail("mesh.smoothing", std::to_string(c.mesh.smoothing), "must be nonnegative");
  if (!(c.solver.tol > 0.0)) fail("solver.tol", format_double(c.solver.tol), "must be positive");
  if (c.solver.max_iterations < 1)
    fail("solver.max_iterations", std::to_string(c.solver.max_iterations), "must be at least 1");
  if (c.truncations.empty()) fail("assembly.truncations", "(empty)", "needs at least one height");
  for (std::size_t i = 0; i < c.truncations.size(); ++i)
    if (!(c.truncations[i] > 0.0) || (i > 0 && !(c.truncations[i] > c.truncations[i - 1])))
      fail("assembly.truncations", join(c.truncations), "must be positive and strictly increasing");
  if (c.word_length < 0 || c.word_length > 12)
    fail("assembly.word_length", std::to_string(c.word_length), "must lie in [0, 12]");
  if (c.analysis.separation_samples < 1)
    fail("analysis.separation_samples", std::to_string(c.analysis.separation_samples), "must be positive");
  if (!(c.analysis.separation_margin >= 0.0))
    fail("analysis.separation_margin", format_double(c.analysis.separation_margin), "must be nonnegative");
  for (double e : c.analysis.arc_levels)
    if (!(e > 0.0 && e < 0.5)) fail("analysis.arc_levels", join(c.analysis.arc_levels), "must lie in (0, 0.5)");
  if (!(c.analysis.accumulation_eps > 0.0))
    fail("analysis.accumulation_eps", format_double(c.analysis.accumulation_eps), "must be positive");
  if (c.output_dir.empty()) fail("output.dir", "(empty)", "must name a directory");

  // Remaining constraints (inner points, sampled data) are checked by the
  // domain constructors; report them against the family section.
  try {
    family_domain(family_params(c));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    const std::string f = !c.qs.empty() ? "family.qs" : !c.f.empty() ? "family.f" : "family.name";
    throw ConfigError(f, line_of(f), e.what());
  }
}

std::string config_text(const RunConfig& c) {
  std::ostringstream os;
  std::string section;
  for (const auto& f : fields()) {
    const auto dot = f.name.find('.');
    const std::string s = f.name.substr(0, dot);
    if (s != section) {
      os << "[" << s << "]\n";
      section = s;
    }
    const std::string v = f.get(c);
    if (v.empty()) continue;
    os << f.name.substr(dot + 1) << " = " << v << "\n";
  }
  return os.str();
}

}  // namespace hsurf::cli
