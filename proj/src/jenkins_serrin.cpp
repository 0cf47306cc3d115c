#include "hsurf/jenkins_serrin.hpp"

#include <cmath>
#include <limits>

namespace hsurf {

namespace {

void check_horocycles(const PolygonDomain& d, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("horocycle size must lie in (0, 1)");
  const auto& v = d.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_ideal(v[i])) continue;
    const cplx ci = (1.0 - 0.5 * delta) * coordinate(v[i]);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j == i) continue;
      if (is_ideal(v[j])) {
        if (j < i) continue;
        const cplx cj = (1.0 - 0.5 * delta) * coordinate(v[j]);
        if (std::abs(ci - cj) <= delta) throw ParameterError("horocycles at distinct ideal vertices overlap");
      } else if (std::abs(ci - coordinate(v[j])) <= 0.5 * delta) {
        throw ParameterError("horocycle contains a finite vertex");
      }
    }
  }
}

}  // namespace

double truncated_length(const PolygonDomain& d, std::size_t i, std::size_t j, double truncation) {
  const AnyPoint& a = d.vertices()[i];
  const AnyPoint& b = d.vertices()[j];
  const double level = horocycle_level(truncation);
  if (is_ideal(a) && is_ideal(b)) {
    const double chord = std::abs(coordinate(a) - coordinate(b));
    return std::log(chord * chord / 4.0) - 2.0 * level;
  }
  if (is_ideal(a)) return busemann(std::get<IdealPoint>(a), coordinate(b)) - level;
  if (is_ideal(b)) return busemann(std::get<IdealPoint>(b), coordinate(a)) - level;
  return hyp_distance(coordinate(a), coordinate(b));
}

JSCertificate jenkins_serrin_check(const PolygonDomain& d, double truncation) {
  check_horocycles(d, truncation);
  const std::size_t n = d.size();
  if (n > 20) throw ParameterError("inscribed-polygon enumeration limited to 20 vertices");

  JSCertificate cert;
  cert.truncation = truncation;
  cert.margin = std::numeric_limits<double>::infinity();
  const bool only_infinite = !d.has_finite_data();

  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<std::size_t> poly;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) poly.push_back(i);
    if (poly.size() < 3) continue;

    double alpha = 0.0, beta = 0.0, perimeter = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const std::size_t i = poly[k];
      const std::size_t j = poly[(k + 1) % poly.size()];
      const double len = truncated_length(d, i, j, truncation);
      perimeter += len;
      if (j == (i + 1) % n && d.edges()[i].kind == DomainEdge::Kind::GeodesicSide) {
        const int s = d.edges()[i].data.infinity_sign();
        if (s > 0) alpha += len;
        if (s < 0) beta += len;
      }
    }
    if (only_infinite && poly.size() == n) {
      cert.equality_case = true;
      cert.equality_defect = alpha - beta;
      continue;
    }
    const double m = perimeter - 2.0 * std::max(alpha, beta);
    if (m < cert.margin) {
      cert.margin = m;
      cert.worst_polygon = poly;
    }
  }
  cert.admissible = cert.margin > 0.0;
  return cert;
}

JSCertificate jenkins_serrin_certify(const PolygonDomain& d, double initial, int max_halvings) {
  JSCertificate prev = jenkins_serrin_check(d, initial);
  double delta = initial;
  for (int k = 0; k < max_halvings; ++k) {
    delta *= 0.5;
    JSCertificate next = jenkins_serrin_check(d, delta);
    const double scale = std::max(std::abs(prev.margin), 1e-300);
    if (std::abs(next.margin - prev.margin) < 0.05 * scale) return next;
    prev = std::move(next);
  }
  return prev;
}

}  // namespace hsurf
