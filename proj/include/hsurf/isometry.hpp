#pragma once

// Isometries of H^2 x R that appear in the constructions: disk automorphisms
// (optionally orientation reversing) times t -> +-t + shift.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "hsurf/hyperbolic.hpp"

namespace hsurf {

using Rational = boost::multiprecision::cpp_rational;

/// Exact decimal/fraction text ("3", "-5/2", "0.125") to Rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Disk automorphism z -> rot * (w - a) / (1 - conj(a) w), with w = z or
/// conj(z).
struct DiskMap {
  cplx rot{1.0, 0.0};  // unit modulus
  cplx a{0.0, 0.0};    // |a| < 1
  bool conjugate = false;

  cplx apply(cplx z) const;
  IdealPoint apply(const IdealPoint& p) const;
  DiskMap inverse() const;
  bool orientation_preserving() const { return !conjugate; }
};

DiskMap compose(const DiskMap& outer, const DiskMap& inner);

/// t -> (flip ? -t : t) + shift * unit, with shift an exact rational.
struct VerticalMap {
  bool flip = false;
  Rational shift{0};
  double unit = 1.0;

  double apply(double t) const;
  double offset() const { return to_double(shift) * unit; }
};

class IsometryH2xR {
 public:
  IsometryH2xR() = default;
  IsometryH2xR(DiskMap disk, VerticalMap vertical) : disk_(disk), vertical_(std::move(vertical)) {}

  static IsometryH2xR identity() { return {}; }

  const DiskMap& disk() const { return disk_; }
  const VerticalMap& vertical() const { return vertical_; }

  cplx apply_disk(cplx z) const { return disk_.apply(z); }
  double apply_height(double t) const { return vertical_.apply(t); }

  struct Point {
    DiskPoint z;
    double t = 0.0;
  };
  Point apply(const Point& p) const;

  IsometryH2xR inverse() const;

  /// Max deviation of the Mobius parameters plus exact comparison of the
  /// vertical part.
  bool approx_equal(const IsometryH2xR& other, double tol) const;

 private:
  DiskMap disk_;
  VerticalMap vertical_;
};

/// b first, then a.
IsometryH2xR compose(const IsometryH2xR& a, const IsometryH2xR& b);
IsometryH2xR power(const IsometryH2xR& g, int k);

IsometryH2xR rotation_about_origin(double alpha);
/// Vertical translation by coeff * unit.
IsometryH2xR vertical_translation(const Rational& coeff, double unit);
/// (z, t) -> (z, 2c - t) with c = coeff * unit.
IsometryH2xR vertical_flip(const Rational& coeff, double unit);
/// Hyperbolic reflection in a geodesic, heights untouched.
IsometryH2xR disk_reflection(const Geodesic& g);
/// Rotation by pi about the horizontal geodesic g x {c}, c = coeff * unit.
IsometryH2xR half_turn_about(const Geodesic& g, const Rational& coeff, double unit);
/// Rotation by pi about the vertical axis {0} x R.
IsometryH2xR axis_half_turn();

/// Parabolic disk automorphism fixing `fixed` and sending src to dst.
IsometryH2xR parabolic_translation(const IdealPoint& fixed, const IdealPoint& src,
                                   const IdealPoint& dst);

}  // namespace hsurf
