#pragma once

// Minimal graphs over a meshed domain: minimization of the discrete area
// functional by damped Newton with an energy line search.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsurf/domain.hpp"
#include "hsurf/kernels.hpp"
#include "hsurf/mesh.hpp"

namespace hsurf {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& msg, double residual)
      : std::runtime_error(msg + " (last residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iterations = 200;
  Kernel kernel = Kernel::Parallel;
};

struct SolveStats {
  int newton_steps = 0;
  int gradient_steps = 0;
  int repaired_edges = 0;  // edges whose weights were repaired for monotonicity
  std::vector<double> energy_history;
  std::vector<double> residual_history;
};

struct GraphSolution {
  Mesh mesh;
  std::vector<double> u;
  std::optional<PolygonDomain> domain;
  double truncation = 0.0;
  double residual = 0.0;
  double energy = 0.0;
  SolveStats stats;
};

/// Discrete area of the graph of u.
double discrete_area(const Mesh& m, const std::vector<double>& u, Kernel kernel = Kernel::Parallel);

/// max over interior vertices of |dE/du_i| / (d^2E/du_i^2).
double discrete_residual(const Mesh& m, const std::vector<double>& u, Kernel kernel = Kernel::Parallel);

/// Discrete harmonic extension of boundary values (cotangent weights).
std::vector<double> harmonic_extension(const Mesh& m, const std::vector<double>& data);

/// Minimizes the discrete area with boundary vertices fixed to `data`
/// (interior entries of `data` are ignored). `initial` seeds the interior.
GraphSolution solve_dirichlet(const Mesh& m, const std::vector<double>& data, const SolverOptions& opt = {},
                              const std::vector<double>* initial = nullptr);

/// Dirichlet data assembled from the domain's edge data with +-inf replaced
/// by +-truncation.
GraphSolution solve(const Mesh& m, const PolygonDomain& d, double truncation, double tol = 1e-10);
GraphSolution solve(const Mesh& m, const PolygonDomain& d, double truncation, const SolverOptions& opt,
                    const std::vector<double>* initial = nullptr);

/// P1 gradient (chart coordinates) of u on triangle t.
cplx triangle_gradient(const Mesh& m, std::size_t t, const std::vector<double>& u);

struct NormalAngleSample {
  double param = 0.0;  // position along the edge in [0, 1]
  double angle = 0.0;  // angle between the surface normal and the horizontal
};

/// Angle of the normal to the horizontal at the mesh vertices of one domain
/// edge: atan(lambda / |grad u|), with the gradient averaged (by area) over
/// the triangles at the vertex.
std::vector<NormalAngleSample> normal_angle_profile(const GraphSolution& sol, int edge);

/// Text container: metadata, vertices with tags and heights, triangles.
std::string serialize(const GraphSolution& sol);
GraphSolution parse_solution(const std::string& text);

}  // namespace hsurf
