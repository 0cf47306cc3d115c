#pragma once

// Subcommands of the hsurf tool. Each returns a process exit code.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsurf/analysis.hpp"
#include "run_config.hpp"

namespace hsurf::cli {

enum ExitCode : int {
  kOk = 0,
  kCriterionFailed = 1,
  kConditionViolated = 2,  // embedding condition violated (certain crossing)
  kUnknown = 3,            // embedding not guaranteed / undecided
  kConfigError = 4,
  kSolverFailure = 5,
  kInternalError = 70,
};

/// In-memory results of one run.
struct RunResults {
  Assembly assembly;
  std::optional<EmbeddingReport> embedding;
  std::optional<NonperiodicEmbedding> nonperiodic;
  std::optional<SeparationReport> separation;
  std::optional<CurvatureReport> curvature;
  std::optional<AccumulationReport> accumulation;
  std::optional<int> accumulation_edge;
};

RunResults run_pipeline(const RunConfig& c);

/// Writes every artifact of the run into c.output_dir (created if needed)
/// and returns the file names written, in order.
std::vector<std::string> write_artifacts(const RunConfig& c, const RunResults& r);

int cmd_build(const RunConfig& c, std::ostream& out, std::ostream& err);
void cmd_families(std::ostream& out);
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);
/// what: obj | domain | solution | levels | curvature | separation |
/// accumulation | manifest.
int cmd_export(const RunConfig& c, const std::string& what, const std::string& path, std::ostream& out,
               std::ostream& err);

}  // namespace hsurf::cli
