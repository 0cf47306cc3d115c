#pragma once

// Poincare disk model of H^2: points, ideal points, geodesics and the
// distance/reflection primitives everything else is built on.

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

namespace hsurf {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Interior points must satisfy |z| < 1 - kInteriorGuard.
inline constexpr double kInteriorGuard = 1e-14;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateGeodesic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of the open unit disk.
class DiskPoint {
 public:
  DiskPoint() = default;
  explicit DiskPoint(cplx z);
  DiskPoint(double x, double y) : DiskPoint(cplx{x, y}) {}

  static DiskPoint origin() { return DiskPoint{}; }

  cplx z() const { return z_; }
  double x() const { return z_.real(); }
  double y() const { return z_.imag(); }

  /// Conformal factor 2 / (1 - |z|^2) of the metric 4|dz|^2/(1-|z|^2)^2.
  double conformal_factor() const { return 2.0 / (1.0 - std::norm(z_)); }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  cplx z_{0.0, 0.0};
};

/// A point on the circle at infinity, stored by its angle in [0, 2pi).
class IdealPoint {
 public:
  IdealPoint() = default;
  explicit IdealPoint(double angle);

  double angle() const { return angle_; }
  cplx unit() const { return std::polar(1.0, angle_); }

  friend bool operator==(const IdealPoint&, const IdealPoint&) = default;

 private:
  double angle_ = 0.0;
};

using AnyPoint = std::variant<DiskPoint, IdealPoint>;

double normalize_angle(double a);
cplx coordinate(const AnyPoint& p);
bool is_ideal(const AnyPoint& p);

/// Hyperbolic distance between interior points.
double hyp_distance(const DiskPoint& p, const DiskPoint& q);
/// Overload accepting raw coordinates; throws DomainError off the open disk.
double hyp_distance(cplx p, cplx q);

/// Geodesic arc between two points of the closed disk.
///
/// Diameters are used exactly when the supporting line passes through the
/// origin; otherwise the supporting circle is orthogonal to the unit circle,
/// so |center|^2 = radius^2 + 1.
struct Geodesic {
  enum class Kind { Diameter, CircularArc };

  Kind kind = Kind::Diameter;
  AnyPoint a;
  AnyPoint b;
  cplx center{0.0, 0.0};  // CircularArc only
  double radius = 0.0;    // CircularArc only
  cplx direction{1.0, 0.0};  // Diameter only: unit direction of the line

  cplx start() const { return coordinate(a); }
  cplx end() const { return coordinate(b); }

  /// |center|^2 - radius^2 - 1 (zero for a genuine geodesic circle).
  double orthogonality_residual() const;

  /// Point on the arc at Euclidean parameter s in [0, 1] (chord/angle).
  cplx point_at(double s) const;
};

Geodesic geodesic_between(const AnyPoint& a, const AnyPoint& b);

/// Hyperbolic reflection (Euclidean inversion or mirror) in the geodesic's
/// supporting curve.
cplx reflect_across(const Geodesic& g, cplx p);
DiskPoint reflect_across(const Geodesic& g, const DiskPoint& p);

/// Hyperbolic distance from an interior point to the complete geodesic
/// supporting g.
double distance_to_geodesic(const Geodesic& g, cplx p);

/// Busemann function of the ideal point p normalized to vanish at the
/// origin: log(|p - z|^2 / (1 - |z|^2)).
double busemann(const IdealPoint& p, cplx z);

/// Busemann level of the horocycle at an ideal point with the given
/// Euclidean diameter.
double horocycle_level(double euclidean_diameter);

std::string to_string(const AnyPoint& p);

}  // namespace hsurf
