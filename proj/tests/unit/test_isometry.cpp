#include <doctest.h>

#include <random>

#include "hsurf/isometry.hpp"

using namespace hsurf;
using std::numbers::pi;

TEST_CASE("rationals parse exactly") {
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-5/2") == Rational(-5, 2));
  CHECK(to_string(Rational(3, 4)) == "3/4");
}

TEST_CASE("rotations") {
  CHECK(rotation_about_origin(0.0).approx_equal(IsometryH2xR::identity(), 1e-15));
  CHECK(std::abs(rotation_about_origin(pi).apply_disk(0.3) - cplx(-0.3, 0.0)) < 1e-15);
  for (int n = 1; n <= 5; ++n)
    CHECK(power(rotation_about_origin(pi / n), 2 * n).approx_equal(IsometryH2xR::identity(), 1e-12));
}

TEST_CASE("screw motion generates the vertical translation") {
  const int n = 2;
  const double h = 0.5;
  const IsometryH2xR S = compose(vertical_translation(2, h), rotation_about_origin(pi / n));
  const IsometryH2xR T = vertical_translation(4 * n, h);
  const IsometryH2xR S4 = power(S, 2 * n);
  CHECK(S4.vertical().shift == Rational(8));
  CHECK(S4.vertical().offset() == doctest::Approx(4.0));
  CHECK(S4.approx_equal(T, 1e-12));
  CHECK(compose(T, T.inverse()).approx_equal(IsometryH2xR::identity(), 1e-15));
  const auto p = T.apply({DiskPoint(0.1, 0.2), 1.0});
  CHECK(p.t == doctest::Approx(1.0 + 4 * n * h));
}

TEST_CASE("two flips compose to a translation") {
  const IsometryH2xR a = vertical_flip(3, 1.0), b = vertical_flip(1, 1.0);
  const IsometryH2xR ab = compose(a, b);
  CHECK_FALSE(ab.vertical().flip);
  CHECK(ab.vertical().shift == Rational(2 * (3 - 1)));
}

TEST_CASE("compositions preserve the product metric") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> r(0.0, 0.9), a(0.0, kTwoPi);
  const Geodesic g = geodesic_between(IdealPoint(0.5), IdealPoint(2.5));
  const IsometryH2xR m = compose(half_turn_about(g, Rational(1, 2), 1.0),
                                 compose(rotation_about_origin(0.7), parabolic_translation(IdealPoint(pi), IdealPoint(0.0),
                                                                                             IdealPoint(2.0))));
  for (int i = 0; i < 100; ++i) {
    const cplx p = std::polar(r(rng), a(rng)), q = std::polar(r(rng), a(rng));
    CHECK(std::abs(hyp_distance(m.apply_disk(p), m.apply_disk(q)) - hyp_distance(p, q)) < 1e-11);
    CHECK(std::abs(m.inverse().apply_disk(m.apply_disk(p)) - p) < 1e-12);
  }
}

TEST_CASE("parabolic translation fixing -1") {
  const double theta = pi / 3;
  const IsometryH2xR P = parabolic_translation(IdealPoint(pi), IdealPoint(0.0), IdealPoint(2 * theta));
  CHECK(std::abs(P.apply_disk(cplx(-1.0, 0.0)) - cplx(-1.0, 0.0)) < 1e-10);
  CHECK(P.disk().apply(IdealPoint(0.0)).angle() == doctest::Approx(2 * theta));
  // one-parameter group: P^2 sends p1 where P sends e^{2i theta}
  const double twice = power(P, 2).disk().apply(IdealPoint(0.0)).angle();
  CHECK(twice == doctest::Approx(P.disk().apply(IdealPoint(2 * theta)).angle()).epsilon(1e-12));
  CHECK_THROWS(parabolic_translation(IdealPoint(pi), IdealPoint(pi), IdealPoint(1.0)));
}

TEST_CASE("axis half-turn and disk reflections are involutions") {
  const IsometryH2xR a = axis_half_turn();
  CHECK(compose(a, a).approx_equal(IsometryH2xR::identity(), 1e-15));
  const IsometryH2xR r = disk_reflection(geodesic_between(IdealPoint(0.2), IdealPoint(1.9)));
  CHECK_FALSE(r.disk().orientation_preserving());
  CHECK(compose(r, r).approx_equal(IsometryH2xR::identity(), 1e-12));
}
