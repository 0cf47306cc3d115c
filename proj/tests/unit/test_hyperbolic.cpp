#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <random>

#include "hsurf/hyperbolic.hpp"

using namespace hsurf;
using std::numbers::pi;

namespace {

cplx random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> r(0.0, 0.95), a(0.0, kTwoPi);
  return std::polar(r(rng), a(rng));
}

}  // namespace

TEST_CASE("distance along a diameter matches the integrated metric") {
  const double expect = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [](double r) { return 2.0 / (1.0 - r * r); }, 0.0, 0.5);
  CHECK(hyp_distance(DiskPoint(0, 0), DiskPoint(0, 0)) == 0.0);
  CHECK(hyp_distance(DiskPoint(0, 0), DiskPoint(0.5, 0)) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("distance is symmetric and rejects points off the disk") {
  std::mt19937 rng(1);
  for (int i = 0; i < 100; ++i) {
    const cplx p = random_point(rng), q = random_point(rng);
    CHECK(hyp_distance(p, q) == doctest::Approx(hyp_distance(q, p)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(hyp_distance(cplx(1.0, 0.0), cplx(0.0, 0.0)), DomainError);
  CHECK_THROWS_AS(DiskPoint(2.0, 0.0), DomainError);
}

TEST_CASE("geodesics through the origin and between ideal points") {
  const Geodesic g = geodesic_between(DiskPoint::origin(), IdealPoint(0.0));
  CHECK(g.kind == Geodesic::Kind::Diameter);
  const Geodesic full = geodesic_between(IdealPoint(0.0), IdealPoint(pi));
  CHECK(full.kind == Geodesic::Kind::Diameter);
  const Geodesic arc = geodesic_between(IdealPoint(0.0), IdealPoint(pi / 2));
  REQUIRE(arc.kind == Geodesic::Kind::CircularArc);
  CHECK(std::abs(arc.center - cplx(1.0, 1.0)) < 1e-12);
  CHECK(arc.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(arc.orthogonality_residual()) < 1e-12);
  CHECK_THROWS_AS(geodesic_between(IdealPoint(1.0), IdealPoint(1.0)), DegenerateGeodesic);
}

TEST_CASE("random geodesics are orthogonal to the unit circle") {
  std::mt19937 rng(2);
  for (int i = 0; i < 50; ++i) {
    const Geodesic g = geodesic_between(DiskPoint(random_point(rng)), DiskPoint(random_point(rng)));
    // relative to |center|^2, which is huge for nearly diametral arcs
    if (g.kind == Geodesic::Kind::CircularArc)
      CHECK(std::abs(g.orthogonality_residual()) < 1e-12 * std::max(1.0, std::norm(g.center)));
    CHECK(std::abs(g.point_at(0.0) - g.start()) < 1e-12);
    CHECK(std::abs(g.point_at(1.0) - g.end()) < 1e-12);
  }
}

TEST_CASE("reflection is an involutive isometry fixing its geodesic") {
  const Geodesic real = geodesic_between(IdealPoint(0.0), IdealPoint(pi));
  CHECK(std::abs(reflect_across(real, cplx(0.3, 0.4)) - cplx(0.3, -0.4)) < 1e-15);
  std::mt19937 rng(3);
  const Geodesic g = geodesic_between(IdealPoint(0.3), IdealPoint(2.0));
  for (int i = 0; i < 100; ++i) {
    const cplx p = random_point(rng), q = random_point(rng);
    CHECK(std::abs(reflect_across(g, reflect_across(g, p)) - p) < 1e-12);
    CHECK(std::abs(hyp_distance(reflect_across(g, p), reflect_across(g, q)) - hyp_distance(p, q)) < 1e-10);
  }
  for (double s : {0.2, 0.5, 0.8}) CHECK(std::abs(reflect_across(g, g.point_at(s)) - g.point_at(s)) < 1e-12);
}

TEST_CASE("distance to a geodesic") {
  const Geodesic real = geodesic_between(IdealPoint(0.0), IdealPoint(pi));
  CHECK(distance_to_geodesic(real, cplx(0.4, 0.0)) == doctest::Approx(0.0));
  CHECK(distance_to_geodesic(real, cplx(0.0, 0.5)) == doctest::Approx(hyp_distance(cplx(0, 0), cplx(0, 0.5))));
}

TEST_CASE("busemann functions vanish at the origin and grow toward the opposite side") {
  const IdealPoint p(0.0);
  CHECK(busemann(p, 0.0) == doctest::Approx(0.0));
  CHECK(busemann(p, cplx(-0.5, 0.0)) > 0.0);
  CHECK(busemann(p, cplx(0.5, 0.0)) < 0.0);
}
