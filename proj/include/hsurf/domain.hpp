#pragma once

// Polygonal domains in the disk with Jenkins-Serrin type boundary data, and
// the constructors for each surface family.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsurf/hyperbolic.hpp"

namespace hsurf {

class InvalidData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BoundarySample {
  double angle = 0.0;
  double value = 0.0;
  friend bool operator==(const BoundarySample&, const BoundarySample&) = default;
};

/// Boundary data carried by one edge.
class EdgeData {
 public:
  enum class Kind { Constant, Sampled, PlusInfinity, MinusInfinity };

  static EdgeData constant(double value);
  /// Samples must be non-decreasing in angle; a repeated angle encodes a
  /// jump (left value first). Three equal angles in a row are rejected.
  static EdgeData sampled(std::vector<BoundarySample> samples);
  static EdgeData plus_infinity();
  static EdgeData minus_infinity();

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ == Kind::PlusInfinity || kind_ == Kind::MinusInfinity; }
  /// +1 for +inf, -1 for -inf, 0 otherwise.
  int infinity_sign() const;
  double constant_value() const;
  const std::vector<BoundarySample>& samples() const { return samples_; }

  /// Value at a boundary angle; +-truncation for infinite data. Sampled data
  /// is interpolated linearly in angle and clamped outside its range. At a
  /// jump the mean of the one-sided values is returned.
  double value_at(double angle, double truncation) const;
  /// Angles at which the sampled data jumps.
  std::vector<double> jump_angles() const;
  std::pair<double, double> finite_range() const;

  friend bool operator==(const EdgeData&, const EdgeData&) = default;

 private:
  Kind kind_ = Kind::Constant;
  double value_ = 0.0;
  std::vector<BoundarySample> samples_;
};

struct DomainEdge {
  enum class Kind { GeodesicSide, IdealArc };
  Kind kind = Kind::GeodesicSide;
  EdgeData data;
  friend bool operator==(const DomainEdge&, const DomainEdge&) = default;
};

/// Family parameters (n, m, h, theta, ...) kept as named reals.
using DomainParams = std::map<std::string, double>;

/// A simply connected polygon with vertices in the closed disk. Edge i runs
/// from vertex i to vertex i+1 (cyclically); the boundary is traversed
/// counterclockwise.
class PolygonDomain {
 public:
  PolygonDomain(std::string family, std::vector<AnyPoint> vertices, std::vector<DomainEdge> edges,
                DomainParams params = {});

  const std::string& family() const { return family_; }
  const std::vector<AnyPoint>& vertices() const { return vertices_; }
  const std::vector<DomainEdge>& edges() const { return edges_; }
  const DomainParams& params() const { return params_; }
  std::optional<double> param(const std::string& key) const;

  std::size_t size() const { return vertices_.size(); }
  const AnyPoint& edge_start(std::size_t e) const { return vertices_[e]; }
  const AnyPoint& edge_end(std::size_t e) const { return vertices_[(e + 1) % vertices_.size()]; }
  Geodesic edge_geodesic(std::size_t e) const;

  bool has_infinite_data() const;
  bool has_finite_data() const;
  /// Min/max over all finite data.
  std::pair<double, double> finite_data_range() const;

  friend bool operator==(const PolygonDomain&, const PolygonDomain&) = default;

 private:
  void validate() const;

  std::string family_;
  std::vector<AnyPoint> vertices_;
  std::vector<DomainEdge> edges_;
  DomainParams params_;
};

// Family constructors.

/// Triangle 0, 1, e^{i pi/2n} with data 0 / +inf / h.
PolygonDomain scherk_triangle(int n, double h);
/// Polygon 0, 1, q_1..q_k, e^{i pi/2n}; +inf, -inf, ... on the outer sides.
PolygonDomain generalized_scherk_polygon(int n, double h, const std::vector<double>& qs);
/// Sector 0, 1, e^{i pi/m} with data 0 / f (on the ideal arc) / h.
PolygonDomain helicoidal_sector(int m, double h, const EdgeData& f);

struct AxisScherkVariant {
  std::vector<double> qs;
};
struct AxisHelicoidalVariant {
  EdgeData f;
};
/// Vertices 1, e^{i theta}, -1 with data on p1p2 (+inf or f), h on p2p0,
/// 0 on p0p1.
PolygonDomain axis_at_infinity_domain(double theta, double h, const AxisScherkVariant& variant);
PolygonDomain axis_at_infinity_domain(double theta, double h, const AxisHelicoidalVariant& variant);
/// Sector 0, 1, e^{i theta} with data +inf / f / 0.
PolygonDomain nonperiodic_domain(double theta, const EdgeData& f);

/// f(e^{it}) = slope * t sampled at `count` points over [0, end_angle].
EdgeData linear_boundary_function(double slope, double end_angle, int count = 64);

// Serialization (see docs/formats.md).
/// "constant v", "plus-infinity", "minus-infinity" or "sampled a:v a:v ...".
std::string to_string(const EdgeData& d);
EdgeData parse_edge_data(const std::string& text, int line = 0);
std::string serialize(const PolygonDomain& d);
PolygonDomain parse_domain(const std::string& text);

}  // namespace hsurf
