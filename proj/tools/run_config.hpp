#pragma once

// Run configuration of the command line tool. The text form is the shared
// key = value grammar with sections [family], [mesh], [solver], [assembly],
// [analysis] and [output]; a [results] section (written into manifests) is
// skipped on input.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsurf/assembler.hpp"

namespace hsurf::cli {

struct AnalysisToggles {
  bool embedding = true;
  bool separation = true;
  bool curvature = true;
  bool accumulation = true;
  int separation_samples = 150;
  double separation_margin = 0.5;
  std::vector<double> arc_levels{0.1, 0.05, 0.025};  // eps_arc sweep for pieces with an ideal arc
  double accumulation_eps = 0.1;
  std::vector<double> accumulation_heights{8.0};
};

struct RunConfig {
  std::string family = "helicoidal-scherk";
  int n = 2;
  int m = 4;
  double theta = 1.0471975511965976;
  double h = 0.5;
  std::string f;  // edge data text, or "linear <slope> [count]"; empty when unset
  std::vector<double> qs;
  MeshGrading mesh;
  SolverOptions solver;
  std::vector<double> truncations{4.0, 8.0, 16.0};
  int word_length = 6;
  AnalysisToggles analysis;
  std::string output_dir = "out";

  std::map<std::string, int> lines;  // "section.key" -> source line (0 for overrides)
};

/// Validation failure naming the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, int line, const std::string& msg);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// Parses and validates. Unknown sections and keys are ParseErrors.
RunConfig parse_run_config(const std::string& text);
/// "section.key=value"; the result is not revalidated.
void apply_override(RunConfig& c, const std::string& assignment);
void validate(const RunConfig& c);

/// Every field in fixed order, in the input grammar.
std::string config_text(const RunConfig& c);

/// Resolves the f text against the family ("linear" spans the ideal arc).
FamilyParams family_params(const RunConfig& c);
AssemblyOptions assembly_options(const RunConfig& c);

/// Field names in order, as "section.key".
std::vector<std::string> config_fields();

}  // namespace hsurf::cli
