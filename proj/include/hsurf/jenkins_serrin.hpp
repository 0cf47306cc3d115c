#pragma once

#include <vector>

#include "hsurf/domain.hpp"

namespace hsurf {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Outcome of the Jenkins-Serrin length test.
///
/// For every inscribed polygon P (vertices a subset of the domain's vertices,
/// in boundary order) with alpha(P), beta(P) the truncated lengths of its +inf
/// and -inf sides and |dP| its truncated perimeter, the domain is admissible
/// iff 2 alpha(P) < |dP| and 2 beta(P) < |dP| for all P. Lengths are measured
/// between horocycles of Euclidean diameter `truncation`.
struct JSCertificate {
  bool admissible = false;
  std::vector<std::size_t> worst_polygon;
  double margin = 0.0;  // min over P of |dP| - 2 max(alpha, beta)
  double truncation = 0.0;
  /// Set when the domain carries only infinite data; then P = domain is the
  /// equality case alpha = beta and is reported, not decided.
  bool equality_case = false;
  double equality_defect = 0.0;  // alpha - beta for P = domain
};

/// Truncated hyperbolic length of the geodesic between vertices i and j.
double truncated_length(const PolygonDomain& d, std::size_t i, std::size_t j, double truncation);

JSCertificate jenkins_serrin_check(const PolygonDomain& d, double truncation);

/// Halves the truncation from `initial` until the margin changes by less than
/// 5% (relative) between successive levels.
JSCertificate jenkins_serrin_certify(const PolygonDomain& d, double initial = 0.05, int max_halvings = 12);

}  // namespace hsurf
