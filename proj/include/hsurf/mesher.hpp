#pragma once

// Triangulation of truncated domains. Ideal vertices between two geodesic
// sides are cut off by horocycles, ideal arcs are pulled in to the circle
// |z| = 1 - eps_arc, and the interior is graded so that hyperbolic edge
// lengths stay close to `ell`.

#include <vector>

#include "hsurf/domain.hpp"
#include "hsurf/mesh.hpp"

namespace hsurf {

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A piece of the truncated boundary: a segment or a circular arc.
struct BoundaryCurve {
  enum class Kind { Segment, Arc };
  Kind kind = Kind::Segment;
  cplx p0, p1;
  cplx center;
  double radius = 0.0;
  double a0 = 0.0;
  double sweep = 0.0;
  BoundaryTag tag;        // tag of the curve's interior points
  BoundaryTag start_tag;  // tag of its first point

  cplx point(double s) const;
  /// Euclidean distance from z to the curve.
  double distance(cplx z) const;
  double hyperbolic_length() const;
};

/// The truncated boundary, counterclockwise, as a closed chain of curves.
std::vector<BoundaryCurve> truncated_boundary(const PolygonDomain& d, const MeshGrading& g);

Mesh triangulate(const PolygonDomain& d, const MeshGrading& g);

/// Mesh of the annulus {r_inner <= |z| <= r_outer}; inner circle tagged
/// Edge 0, outer circle Edge 1.
Mesh annulus_mesh(double r_inner, double r_outer, double ell);

/// Dirichlet values of every boundary vertex of a mesh built for `d`, with
/// infinite data replaced by +-truncation. Interior entries are left 0.
std::vector<double> boundary_values(const PolygonDomain& d, const Mesh& m, double truncation);

}  // namespace hsurf
