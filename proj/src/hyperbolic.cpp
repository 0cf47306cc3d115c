#include "hsurf/hyperbolic.hpp"

#include <cmath>
#include <sstream>

namespace hsurf {

namespace {

void require_interior(cplx z, const char* what) {
  if (!(std::abs(z) < 1.0 - kInteriorGuard)) {
    std::ostringstream os;
    os << what << ": point " << z << " is not in the open disk";
    throw DomainError(os.str());
  }
}

}  // namespace

DiskPoint::DiskPoint(cplx z) : z_(z) { require_interior(z, "DiskPoint"); }

IdealPoint::IdealPoint(double angle) : angle_(normalize_angle(angle)) {}

double normalize_angle(double a) {
  if (!std::isfinite(a)) throw DomainError("ideal point angle must be finite");
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

cplx coordinate(const AnyPoint& p) {
  if (const auto* d = std::get_if<DiskPoint>(&p)) return d->z();
  return std::get<IdealPoint>(p).unit();
}

bool is_ideal(const AnyPoint& p) { return std::holds_alternative<IdealPoint>(p); }

double hyp_distance(cplx p, cplx q) {
  require_interior(p, "hyp_distance");
  require_interior(q, "hyp_distance");
  const double denom = std::sqrt((1.0 - std::norm(p)) * (1.0 - std::norm(q)));
  return 2.0 * std::asinh(std::abs(p - q) / denom);
}

double hyp_distance(const DiskPoint& p, const DiskPoint& q) {
  return hyp_distance(p.z(), q.z());
}

double Geodesic::orthogonality_residual() const {
  if (kind == Kind::Diameter) return 0.0;
  return std::norm(center) - radius * radius - 1.0;
}

cplx Geodesic::point_at(double s) const {
  const cplx p = start();
  const cplx q = end();
  if (kind == Kind::Diameter) return p + s * (q - p);
  const double a0 = std::arg(p - center);
  double a1 = std::arg(q - center);
  double sweep = a1 - a0;
  // the arc inside the disk is the short one (less than pi)
  while (sweep > std::numbers::pi) sweep -= kTwoPi;
  while (sweep < -std::numbers::pi) sweep += kTwoPi;
  return center + std::polar(radius, a0 + s * sweep);
}

Geodesic geodesic_between(const AnyPoint& a, const AnyPoint& b) {
  const cplx p = coordinate(a);
  const cplx q = coordinate(b);
  if (is_ideal(a) && is_ideal(b)) {
    if (std::get<IdealPoint>(a) == std::get<IdealPoint>(b))
      throw DegenerateGeodesic("geodesic_between: coincident ideal points");
  } else if (std::abs(p - q) < 1e-15) {
    throw DegenerateGeodesic("geodesic_between: coincident points");
  }

  Geodesic g;
  g.a = a;
  g.b = b;

  // Through the origin when p, q and 0 are collinear.
  const double cross = p.real() * q.imag() - p.imag() * q.real();
  const double scale = std::max(std::abs(p), std::abs(q));
  if (std::abs(p) < 1e-15 || std::abs(q) < 1e-15 || std::abs(cross) <= 1e-14 * scale * scale) {
    g.kind = Geodesic::Kind::Diameter;
    const cplx far = std::abs(p) > std::abs(q) ? p : q;
    g.direction = far / std::abs(far);
    return g;
  }

  g.kind = Geodesic::Kind::CircularArc;
  if (is_ideal(a) && is_ideal(b)) {
    // Tangent lines at both ideal points meet at the center.
    const double alpha = std::get<IdealPoint>(a).angle();
    const double beta = std::get<IdealPoint>(b).angle();
    const double half = 0.5 * (beta - alpha);
    const double mid = 0.5 * (alpha + beta);
    g.center = std::polar(1.0 / std::cos(half), mid);
    g.radius = std::abs(std::tan(half));
    return g;
  }
  // The circle through p and q orthogonal to the unit circle also passes
  // through the inverse point of any interior input.
  const cplx interior = is_ideal(a) ? q : p;
  const cplx other = is_ideal(a) ? p : q;
  const cplx inv = 1.0 / std::conj(interior);
  // circumcenter of interior, other, inv
  const cplx b1 = other - interior;
  const cplx c1 = inv - interior;
  const double d = 2.0 * (b1.real() * c1.imag() - b1.imag() * c1.real());
  const double bb = std::norm(b1);
  const double cc = std::norm(c1);
  const cplx rel{(c1.imag() * bb - b1.imag() * cc) / d, (b1.real() * cc - c1.real() * bb) / d};
  g.center = interior + rel;
  g.radius = std::sqrt(std::norm(g.center) - 1.0);
  return g;
}

cplx reflect_across(const Geodesic& g, cplx p) {
  if (g.kind == Geodesic::Kind::Diameter) {
    // mirror in the line through 0 with direction u: u^2 * conj(p)
    return g.direction * g.direction * std::conj(p);
  }
  // unreachable for interior p: the center lies outside the closed disk
  return g.center + g.radius * g.radius / std::conj(p - g.center);
}

DiskPoint reflect_across(const Geodesic& g, const DiskPoint& p) {
  return DiskPoint(reflect_across(g, p.z()));
}

double distance_to_geodesic(const Geodesic& g, cplx p) {
  return 0.5 * hyp_distance(p, reflect_across(g, p));
}

double busemann(const IdealPoint& p, cplx z) {
  return std::log(std::norm(p.unit() - z) / (1.0 - std::norm(z)));
}

double horocycle_level(double euclidean_diameter) {
  // the horocycle passes through (1 - delta) * p
  return std::log(euclidean_diameter / (2.0 - euclidean_diameter));
}

std::string to_string(const AnyPoint& p) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* d = std::get_if<DiskPoint>(&p))
    os << "interior(" << d->x() << ", " << d->y() << ")";
  else
    os << "ideal(" << std::get<IdealPoint>(p).angle() << ")";
  return os.str();
}

}  // namespace hsurf
