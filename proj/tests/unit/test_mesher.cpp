#include <doctest.h>

#include <algorithm>

#include "hsurf/mesher.hpp"

using namespace hsurf;
using std::numbers::pi;

namespace {

Mesh scherk_mesh(double ell) {
  MeshGrading g;
  g.ell = ell;
  return triangulate(scherk_triangle(2, 1.0), g);
}

}  // namespace

TEST_CASE("triangles are counterclockwise and non-degenerate") {
  for (const auto& d : {scherk_triangle(2, 1.0), helicoidal_sector(3, 1.0, EdgeData::constant(2.0)),
                        axis_at_infinity_domain(pi / 3, 1.0, AxisScherkVariant{})}) {
    MeshGrading g;
    g.ell = 0.1;
    const Mesh m = triangulate(d, g);
    double amin = INFINITY;
    for (const auto& t : m.triangles)
      amin = std::min(amin, signed_area(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]));
    CHECK(amin > 1e-12);
  }
}

TEST_CASE("triangle count grows about fourfold when ell is halved") {
  const double ratio = static_cast<double>(scherk_mesh(0.05).triangle_count()) / scherk_mesh(0.1).triangle_count();
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("boundary vertices lie on the truncated boundary") {
  MeshGrading g;
  g.ell = 0.1;
  const auto d = scherk_triangle(2, 1.0);
  const Mesh m = triangulate(d, g);
  const auto curves = truncated_boundary(d, g);
  for (int v : m.boundary_vertices()) {
    double best = INFINITY;
    for (const auto& c : curves) best = std::min(best, c.distance(m.vertices[v]));
    CHECK(best < 1e-9);
    CHECK(m.tags[v].index >= 0);
  }
}

TEST_CASE("edge lengths stay near ell away from the cusps") {
  const Mesh m = scherk_mesh(0.1);
  int near = 0;
  for (std::size_t t = 0; t < m.triangle_count(); ++t) near += hyperbolic_diameter(m, t) < 0.2;
  CHECK(near > 0.9 * m.triangle_count());
}

TEST_CASE("locator interpolates linear data exactly") {
  const Mesh m = scherk_mesh(0.1);
  std::vector<double> u(m.vertex_count());
  for (std::size_t v = 0; v < u.size(); ++v) u[v] = 2.0 * m.vertices[v].real() - m.vertices[v].imag();
  const MeshLocator loc(m);
  for (cplx z : {cplx(0.2, 0.05), cplx(0.5, 0.2), cplx(0.1, 0.08)}) {
    const auto val = loc.interpolate(z, u);
    REQUIRE(val);
    CHECK(*val == doctest::Approx(2.0 * z.real() - z.imag()).epsilon(1e-12));
  }
  CHECK_FALSE(loc.locate(cplx(-0.5, -0.5)));
}

TEST_CASE("annulus mesh tags its two circles") {
  const Mesh m = annulus_mesh(0.3, 0.8, 0.1);
  int inner = 0, outer = 0;
  for (int v : m.boundary_vertices()) {
    const double r = std::abs(m.vertices[v]);
    if (m.tags[v].index == 0) {
      ++inner;
      CHECK(r == doctest::Approx(0.3));
    } else {
      ++outer;
      CHECK(r == doctest::Approx(0.8));
    }
  }
  CHECK(inner > 0);
  CHECK(outer > inner);
}

TEST_CASE("boundary values replace infinite data by the truncation") {
  const auto d = scherk_triangle(2, 1.0);
  const Mesh m = scherk_mesh(0.1);
  const auto b = boundary_values(d, m, 7.0);
  for (int v : m.boundary_vertices())
    if (m.tags[v].kind == BoundaryTag::Kind::Edge && m.tags[v].index == 1) CHECK(b[v] == 7.0);
}
