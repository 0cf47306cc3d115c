#include "hsurf/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsurf/keyvalue.hpp"

namespace hsurf {

EdgeData EdgeData::constant(double value) {
  if (!std::isfinite(value)) throw InvalidData("constant edge data must be finite");
  EdgeData d;
  d.kind_ = Kind::Constant;
  d.value_ = value;
  return d;
}

EdgeData EdgeData::sampled(std::vector<BoundarySample> samples) {
  if (samples.empty()) throw InvalidData("sampled edge data needs at least one sample");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].angle) || !std::isfinite(samples[i].value))
      throw InvalidData("sampled edge data must be finite (infinite data is not allowed on ideal arcs)");
    if (i > 0 && samples[i].angle < samples[i - 1].angle)
      throw InvalidData("sample angles must be non-decreasing");
    if (i > 1 && samples[i].angle == samples[i - 1].angle && samples[i].angle == samples[i - 2].angle)
      throw InvalidData("a jump is encoded by exactly two samples at one angle");
  }
  EdgeData d;
  d.kind_ = Kind::Sampled;
  d.samples_ = std::move(samples);
  return d;
}

EdgeData EdgeData::plus_infinity() {
  EdgeData d;
  d.kind_ = Kind::PlusInfinity;
  return d;
}

EdgeData EdgeData::minus_infinity() {
  EdgeData d;
  d.kind_ = Kind::MinusInfinity;
  return d;
}

int EdgeData::infinity_sign() const {
  if (kind_ == Kind::PlusInfinity) return 1;
  if (kind_ == Kind::MinusInfinity) return -1;
  return 0;
}

double EdgeData::constant_value() const {
  if (kind_ != Kind::Constant) throw InvalidData("edge data is not a finite constant");
  return value_;
}

double EdgeData::value_at(double angle, double truncation) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::PlusInfinity:
      return truncation;
    case Kind::MinusInfinity:
      return -truncation;
    case Kind::Sampled:
      break;
  }
  const auto& s = samples_;
  if (angle <= s.front().angle) {
    if (s.size() > 1 && s[1].angle == s[0].angle && angle == s[0].angle)
      return 0.5 * (s[0].value + s[1].value);
    return s.front().value;
  }
  if (angle >= s.back().angle) {
    const std::size_t n = s.size();
    if (n > 1 && s[n - 2].angle == s[n - 1].angle && angle == s[n - 1].angle)
      return 0.5 * (s[n - 2].value + s[n - 1].value);
    return s.back().value;
  }
  const auto it = std::upper_bound(s.begin(), s.end(), angle,
                                   [](double a, const BoundarySample& b) { return a < b.angle; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (lo.angle == angle && it - 1 != s.begin() && (it - 2)->angle == angle)
    return 0.5 * ((it - 2)->value + lo.value);
  const double w = (angle - lo.angle) / (hi.angle - lo.angle);
  return lo.value + w * (hi.value - lo.value);
}

std::vector<double> EdgeData::jump_angles() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < samples_.size(); ++i)
    if (samples_[i].angle == samples_[i - 1].angle) out.push_back(samples_[i].angle);
  return out;
}

std::pair<double, double> EdgeData::finite_range() const {
  if (kind_ == Kind::Constant) return {value_, value_};
  if (kind_ != Kind::Sampled) throw InvalidData("infinite data has no finite range");
  const auto [lo, hi] = std::minmax_element(samples_.begin(), samples_.end(),
                                            [](const auto& a, const auto& b) { return a.value < b.value; });
  return {lo->value, hi->value};
}

PolygonDomain::PolygonDomain(std::string family, std::vector<AnyPoint> vertices,
                             std::vector<DomainEdge> edges, DomainParams params)
    : family_(std::move(family)),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      params_(std::move(params)) {
  validate();
}

std::optional<double> PolygonDomain::param(const std::string& key) const {
  const auto it = params_.find(key);
  if (it == params_.end()) return std::nullopt;
  return it->second;
}

void PolygonDomain::validate() const {
  const std::size_t n = vertices_.size();
  if (n < 3) throw InvalidData("a domain needs at least three vertices");
  if (edges_.size() != n) throw InvalidData("edge count must equal vertex count");
  double area2 = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    const AnyPoint& a = edge_start(e);
    const AnyPoint& b = edge_end(e);
    const DomainEdge& edge = edges_[e];
    if (edge.kind == DomainEdge::Kind::IdealArc) {
      if (!is_ideal(a) || !is_ideal(b)) throw InvalidData("ideal arcs must join two ideal vertices");
      if (edge.data.is_infinite()) throw InvalidData("infinite data is not allowed on ideal arcs");
    } else {
      (void)geodesic_between(a, b);  // throws when degenerate
      if (edge.data.kind() == EdgeData::Kind::Sampled)
        throw InvalidData("sampled data is only supported on ideal arcs");
    }
    const cplx p = coordinate(a);
    const cplx q = coordinate(b);
    area2 += p.real() * q.imag() - p.imag() * q.real();
  }
  if (!(area2 > 0.0)) throw InvalidData("domain vertices must be listed counterclockwise");
}

Geodesic PolygonDomain::edge_geodesic(std::size_t e) const {
  return geodesic_between(edge_start(e), edge_end(e));
}

bool PolygonDomain::has_infinite_data() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const auto& e) { return e.data.is_infinite(); });
}

bool PolygonDomain::has_finite_data() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const auto& e) { return !e.data.is_infinite(); });
}

std::pair<double, double> PolygonDomain::finite_data_range() const {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& e : edges_) {
    if (e.data.is_infinite()) continue;
    const auto [a, b] = e.data.finite_range();
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  return {lo, hi};
}

namespace {

DomainEdge side(EdgeData d) { return {DomainEdge::Kind::GeodesicSide, std::move(d)}; }
DomainEdge arc(EdgeData d) { return {DomainEdge::Kind::IdealArc, std::move(d)}; }

void require_height(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidData("height h must be positive");
}

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) throw InvalidData("theta must lie in (0, pi)");
}

void require_finite(const EdgeData& f) {
  if (f.is_infinite()) throw InvalidData("boundary function on an ideal arc must be finite");
}

std::vector<DomainEdge> alternating_infinite_sides(std::size_t count) {
  std::vector<DomainEdge> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(side(i % 2 == 0 ? EdgeData::plus_infinity() : EdgeData::minus_infinity()));
  return out;
}

void require_inner_points(const std::vector<double>& qs, double end) {
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!(qs[i] > 0.0 && qs[i] < end)) throw InvalidData("interior ideal points must lie strictly inside the outer arc");
    if (i > 0 && !(qs[i] > qs[i - 1])) throw InvalidData("interior ideal points must be strictly increasing");
  }
}

}  // namespace

PolygonDomain scherk_triangle(int n, double h) { return generalized_scherk_polygon(n, h, {}); }

PolygonDomain generalized_scherk_polygon(int n, double h, const std::vector<double>& qs) {
  if (n < 1) throw InvalidData("n must be a positive integer");
  require_height(h);
  const double end = std::numbers::pi / (2.0 * n);
  require_inner_points(qs, end);
  std::vector<AnyPoint> v{DiskPoint::origin(), IdealPoint(0.0)};
  for (double q : qs) v.emplace_back(IdealPoint(q));
  v.emplace_back(IdealPoint(end));
  std::vector<DomainEdge> e{side(EdgeData::constant(0.0))};
  for (auto& s : alternating_infinite_sides(qs.size() + 1)) e.push_back(std::move(s));
  e.push_back(side(EdgeData::constant(h)));
  return PolygonDomain("helicoidal-scherk", std::move(v), std::move(e),
                       {{"n", static_cast<double>(n)}, {"h", h}});
}

PolygonDomain helicoidal_sector(int m, double h, const EdgeData& f) {
  if (m < 1) throw InvalidData("m must be a positive integer");
  require_height(h);
  require_finite(f);
  const double end = std::numbers::pi / m;
  std::vector<AnyPoint> v{DiskPoint::origin(), IdealPoint(0.0), IdealPoint(end)};
  std::vector<DomainEdge> e{side(EdgeData::constant(0.0)), arc(f), side(EdgeData::constant(h))};
  return PolygonDomain("helicoidal", std::move(v), std::move(e), {{"m", static_cast<double>(m)}, {"h", h}});
}

PolygonDomain axis_at_infinity_domain(double theta, double h, const AxisScherkVariant& variant) {
  require_theta(theta);
  require_height(h);
  require_inner_points(variant.qs, theta);
  std::vector<AnyPoint> v{IdealPoint(0.0)};
  for (double q : variant.qs) v.emplace_back(IdealPoint(q));
  v.emplace_back(IdealPoint(theta));
  v.emplace_back(IdealPoint(std::numbers::pi));
  auto e = alternating_infinite_sides(variant.qs.size() + 1);
  e.push_back(side(EdgeData::constant(h)));
  e.push_back(side(EdgeData::constant(0.0)));
  return PolygonDomain("axis-at-infinity-scherk", std::move(v), std::move(e), {{"theta", theta}, {"h", h}});
}

PolygonDomain axis_at_infinity_domain(double theta, double h, const AxisHelicoidalVariant& variant) {
  require_theta(theta);
  require_height(h);
  require_finite(variant.f);
  std::vector<AnyPoint> v{IdealPoint(0.0), IdealPoint(theta), IdealPoint(std::numbers::pi)};
  std::vector<DomainEdge> e{arc(variant.f), side(EdgeData::constant(h)), side(EdgeData::constant(0.0))};
  return PolygonDomain("axis-at-infinity-helicoidal", std::move(v), std::move(e), {{"theta", theta}, {"h", h}});
}

PolygonDomain nonperiodic_domain(double theta, const EdgeData& f) {
  require_theta(theta);
  require_finite(f);
  std::vector<AnyPoint> v{DiskPoint::origin(), IdealPoint(0.0), IdealPoint(theta)};
  std::vector<DomainEdge> e{side(EdgeData::plus_infinity()), arc(f), side(EdgeData::constant(0.0))};
  return PolygonDomain("non-periodic", std::move(v), std::move(e), {{"theta", theta}});
}

EdgeData linear_boundary_function(double slope, double end_angle, int count) {
  if (count < 2) throw InvalidData("need at least two samples");
  std::vector<BoundarySample> s;
  for (int i = 0; i < count; ++i) {
    const double t = end_angle * i / (count - 1);
    s.push_back({t, slope * t});
  }
  return EdgeData::sampled(std::move(s));
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string data_text(const EdgeData& d) {
  switch (d.kind()) {
    case EdgeData::Kind::Constant:
      return "constant " + format_double(d.constant_value());
    case EdgeData::Kind::PlusInfinity:
      return "plus-infinity";
    case EdgeData::Kind::MinusInfinity:
      return "minus-infinity";
    case EdgeData::Kind::Sampled: {
      std::string s = "sampled";
      for (const auto& b : d.samples()) s += " " + format_double(b.angle) + ":" + format_double(b.value);
      return s;
    }
  }
  return {};
}

EdgeData parse_data(const std::vector<std::string>& tok, std::size_t start, int line) {
  if (tok.size() <= start) throw ParseError(line, "missing edge data");
  const std::string& kind = tok[start];
  if (kind == "plus-infinity") return EdgeData::plus_infinity();
  if (kind == "minus-infinity") return EdgeData::minus_infinity();
  if (kind == "constant") {
    if (tok.size() != start + 2) throw ParseError(line, "constant data takes one value");
    return EdgeData::constant(parse_double(tok[start + 1], line));
  }
  if (kind == "sampled") {
    std::vector<BoundarySample> s;
    for (std::size_t i = start + 1; i < tok.size(); ++i) {
      const auto colon = tok[i].find(':');
      if (colon == std::string::npos) throw ParseError(line, "sample must be angle:value");
      s.push_back({parse_double(tok[i].substr(0, colon), line), parse_double(tok[i].substr(colon + 1), line)});
    }
    try {
      return EdgeData::sampled(std::move(s));
    } catch (const InvalidData& e) {
      throw ParseError(line, e.what());
    }
  }
  throw ParseError(line, "unknown edge data kind '" + kind + "'");
}

}  // namespace

std::string to_string(const EdgeData& d) { return data_text(d); }

EdgeData parse_edge_data(const std::string& text, int line) { return parse_data(split_ws(text), 0, line); }

std::string serialize(const PolygonDomain& d) {
  std::ostringstream os;
  os << "# hsurf domain v1\n[domain]\nfamily = " << d.family() << "\n";
  os << "[params]\n";
  for (const auto& [k, v] : d.params()) os << k << " = " << format_double(v) << "\n";
  os << "[vertices]\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    const AnyPoint& p = d.vertices()[i];
    os << i << " = ";
    if (const auto* q = std::get_if<DiskPoint>(&p))
      os << "interior " << format_double(q->x()) << " " << format_double(q->y()) << "\n";
    else
      os << "ideal " << format_double(std::get<IdealPoint>(p).angle()) << "\n";
  }
  os << "[edges]\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    const DomainEdge& e = d.edges()[i];
    os << i << " = " << (e.kind == DomainEdge::Kind::IdealArc ? "arc " : "geodesic ") << data_text(e.data)
       << "\n";
  }
  return os.str();
}

PolygonDomain parse_domain(const std::string& text) {
  std::string family;
  DomainParams params;
  std::map<long, std::pair<AnyPoint, int>> verts;
  std::map<long, std::pair<DomainEdge, int>> edges;
  for (const auto& kv : parse_key_value(text)) {
    if (kv.section == "domain") {
      if (kv.key != "family") throw ParseError(kv.line, "unknown key '" + kv.key + "' in [domain]");
      family = kv.value;
    } else if (kv.section == "params") {
      params[kv.key] = parse_double(kv.value, kv.line);
    } else if (kv.section == "vertices") {
      const long idx = parse_long(kv.key, kv.line);
      const auto tok = split_ws(kv.value);
      if (tok.size() == 2 && tok[0] == "ideal") {
        verts.emplace(idx, std::pair{AnyPoint{IdealPoint(parse_double(tok[1], kv.line))}, kv.line});
      } else if (tok.size() == 3 && tok[0] == "interior") {
        try {
          verts.emplace(idx, std::pair{AnyPoint{DiskPoint(parse_double(tok[1], kv.line),
                                                           parse_double(tok[2], kv.line))},
                                       kv.line});
        } catch (const DomainError& e) {
          throw ParseError(kv.line, e.what());
        }
      } else {
        throw ParseError(kv.line, "vertex must be 'ideal <angle>' or 'interior <x> <y>'");
      }
    } else if (kv.section == "edges") {
      const long idx = parse_long(kv.key, kv.line);
      const auto tok = split_ws(kv.value);
      if (tok.empty() || (tok[0] != "geodesic" && tok[0] != "arc"))
        throw ParseError(kv.line, "edge must start with 'geodesic' or 'arc'");
      DomainEdge e{tok[0] == "arc" ? DomainEdge::Kind::IdealArc : DomainEdge::Kind::GeodesicSide,
                   parse_data(tok, 1, kv.line)};
      edges.emplace(idx, std::pair{std::move(e), kv.line});
    } else {
      throw ParseError(kv.line, "unknown section [" + kv.section + "]");
    }
  }
  std::vector<AnyPoint> v;
  std::vector<DomainEdge> e;
  for (const auto& [i, p] : verts) {
    if (i != static_cast<long>(v.size())) throw ParseError(p.second, "vertex indices must be 0..n-1");
    v.push_back(p.first);
  }
  for (const auto& [i, p] : edges) {
    if (i != static_cast<long>(e.size())) throw ParseError(p.second, "edge indices must be 0..n-1");
    e.push_back(p.first);
  }
  return PolygonDomain(family, std::move(v), std::move(e), std::move(params));
}

}  // namespace hsurf
