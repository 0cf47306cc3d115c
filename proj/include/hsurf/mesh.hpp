#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hsurf/domain.hpp"
#include "hsurf/hyperbolic.hpp"
#include "hsurf/isometry.hpp"

namespace hsurf {

/// Which part of the truncated boundary a vertex lies on.
struct BoundaryTag {
  enum class Kind {
    Interior,
    Edge,    // on domain edge `index`
    Cutoff,  // on the horocycle cutting domain vertex `index`
    Corner,  // corner at domain vertex `index` between two data edges
  };
  Kind kind = Kind::Interior;
  int index = -1;
  /// Position along a cutoff curve in [0, 1] (from edge index-1 to edge index).
  double param = 0.0;

  bool on_boundary() const { return kind != Kind::Interior; }
  friend bool operator==(const BoundaryTag&, const BoundaryTag&) = default;
};

struct MeshGrading {
  double ell = 0.1;       // target hyperbolic edge length
  double delta = 0.05;    // horocycle cutoff (Euclidean diameter)
  double eps_arc = 0.05;  // ideal arcs replaced by |z| = 1 - eps_arc
  int smoothing = 3;      // Laplacian smoothing passes on interior points
};

struct Mesh {
  std::vector<cplx> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryTag> tags;
  MeshGrading grading;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
  bool is_boundary(std::size_t v) const { return tags[v].on_boundary(); }
  std::vector<int> interior_vertices() const;
  std::vector<int> boundary_vertices() const;
};

double signed_area(cplx a, cplx b, cplx c);
/// Longest hyperbolic edge of a triangle.
double hyperbolic_diameter(const Mesh& m, std::size_t t);

/// Bucket grid for point location in a mesh.
class MeshLocator {
 public:
  explicit MeshLocator(const Mesh& mesh, int cells_per_side = 0);

  struct Hit {
    int triangle = -1;
    std::array<double, 3> bary{};
  };
  std::optional<Hit> locate(cplx z, double tol = 1e-12) const;
  /// Piecewise-linear interpolation of per-vertex values.
  std::optional<double> interpolate(cplx z, const std::vector<double>& values) const;

 private:
  const Mesh* mesh_;
  double x0_ = 0, y0_ = 0, cell_ = 1;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

/// Rigidly transform mesh coordinates by a disk automorphism (orientation
/// fixed up so triangles stay counterclockwise).
Mesh transform(const Mesh& m, const DiskMap& map);

}  // namespace hsurf
