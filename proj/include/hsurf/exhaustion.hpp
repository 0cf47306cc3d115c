#pragma once

// Infinite data by exhaustion (increasing truncation heights) and uniform
// refinement studies.

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "hsurf/solver.hpp"

namespace hsurf {

/// Interior mesh vertices at hyperbolic distance > margin from every
/// infinite-data edge and from every finite vertex where the two adjacent
/// data differ.
std::vector<cplx> probe_points(const PolygonDomain& d, const Mesh& m, double margin = 0.5);

/// Values of a solution at fixed points (P1 interpolation). Throws
/// InvalidData if a point is outside the mesh.
std::vector<double> sample_solution(const GraphSolution& sol, const std::vector<cplx>& points);

double linf_difference(const std::vector<double>& a, const std::vector<double>& b);

struct LevelReport {
  int level = 0;
  double ell = 0.0;
  double truncation = 0.0;
  double residual = 0.0;
  double probe_error = 0.0;  // NaN where undefined (first level without an oracle)
};

void write_level_csv(std::ostream& os, const std::vector<LevelReport>& rows);

struct SweepResult {
  std::vector<GraphSolution> solutions;
  std::vector<LevelReport> report;  // probe_error = L-inf change from the previous M
  std::vector<cplx> probes;
};

/// Solves on one mesh for each truncation in Ms (strictly increasing),
/// warm-starting from the previous level. Domains with infinite data must
/// pass the Jenkins-Serrin check.
SweepResult truncation_sweep(const PolygonDomain& d, const Mesh& mesh, const std::vector<double>& Ms,
                             const SolverOptions& opt = {});

struct RefineOptions {
  MeshGrading grading;  // coarsest level
  double truncation = 8.0;
  double target = 1e-3;  // stop when successive probe differences fall below this
  int max_levels = 4;
  int min_levels = 1;  // always solve at least this many levels
  double probe_margin = 0.5;
  std::function<double(cplx)> exact;  // optional oracle
  SolverOptions solver;
};

struct RefineResult {
  std::vector<GraphSolution> levels;
  std::vector<LevelReport> report;
  std::vector<cplx> probes;
  std::vector<double> successive;  // L-inf difference between levels k and k+1
  std::vector<double> errors;      // against the oracle, when given
  std::vector<double> orders;      // log2 ratios of errors (or of successive differences)
  bool converged = false;
};

class RefinementBudgetExhausted : public std::runtime_error {
 public:
  RefinementBudgetExhausted(RefineResult partial)
      : std::runtime_error("refinement budget exhausted before reaching the target"), partial_(std::move(partial)) {}
  const RefineResult& partial() const { return partial_; }

 private:
  RefineResult partial_;
};

/// Halves ell (from opt.grading) until successive solutions differ by less
/// than opt.target on the probe set of the coarsest mesh.
RefineResult refine_until(const PolygonDomain& d, const RefineOptions& opt);

}  // namespace hsurf
