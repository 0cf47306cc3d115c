#include "hsurf/mesher.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>
#include <boost/polygon/voronoi.hpp>

namespace hsurf {

namespace {

using std::numbers::pi;

double wrap_pi(double a) { return std::remainder(a, kTwoPi); }

double wrap_positive(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

double conformal(cplx z) { return 2.0 / (1.0 - std::norm(z)); }

// Supporting curve of a geodesic: a line through the origin or a circle.
struct Support {
  bool line = true;
  cplx dir{1.0, 0.0};
  cplx center;
  double radius = 0.0;
};

Support support_of(const Geodesic& g) {
  Support s;
  if (g.kind == Geodesic::Kind::Diameter) {
    s.dir = g.direction;
  } else {
    s.line = false;
    s.center = g.center;
    s.radius = g.radius;
  }
  return s;
}

// Intersections of a support with the circle |z - c| = r.
std::vector<cplx> intersect(const Support& s, cplx c, double r) {
  std::vector<cplx> out;
  if (s.line) {
    const double b = (std::conj(s.dir) * c).real();
    const double disc = b * b - (std::norm(c) - r * r);
    if (disc < 0.0) return out;
    const double sq = std::sqrt(disc);
    out.push_back((b - sq) * s.dir);
    out.push_back((b + sq) * s.dir);
    return out;
  }
  const cplx d = c - s.center;
  const double dist = std::abs(d);
  if (dist == 0.0) return out;
  const double a = (s.radius * s.radius - r * r + dist * dist) / (2.0 * dist);
  const double h2 = s.radius * s.radius - a * a;
  if (h2 < 0.0) return out;
  const cplx u = d / dist;
  const cplx base = s.center + a * u;
  const double h = std::sqrt(h2);
  out.push_back(base + cplx(0.0, h) * u);
  out.push_back(base - cplx(0.0, h) * u);
  return out;
}

cplx pick(const std::vector<cplx>& pts, cplx ref, bool farthest) {
  if (pts.empty()) throw MeshError("truncation curve misses a domain side; reduce delta or eps_arc");
  cplx best = pts.front();
  for (const cplx& p : pts) {
    const bool better = farthest ? std::abs(p - ref) > std::abs(best - ref) : std::abs(p - ref) < std::abs(best - ref);
    if (better) best = p;
  }
  return best;
}

BoundaryCurve geodesic_piece(const Support& s, cplx from, cplx to) {
  BoundaryCurve c;
  c.p0 = from;
  c.p1 = to;
  if (s.line) {
    c.kind = BoundaryCurve::Kind::Segment;
  } else {
    c.kind = BoundaryCurve::Kind::Arc;
    c.center = s.center;
    c.radius = s.radius;
    c.a0 = std::arg(from - s.center);
    c.sweep = wrap_pi(std::arg(to - s.center) - c.a0);
  }
  return c;
}

BoundaryCurve circle_piece(cplx center, double radius, double a0, double sweep) {
  BoundaryCurve c;
  c.kind = BoundaryCurve::Kind::Arc;
  c.center = center;
  c.radius = radius;
  c.a0 = a0;
  c.sweep = sweep;
  c.p0 = c.point(0.0);
  c.p1 = c.point(1.0);
  return c;
}

BoundaryTag tag(BoundaryTag::Kind k, int index, double param = 0.0) {
  BoundaryTag t;
  t.kind = k;
  t.index = index;
  t.param = param;
  return t;
}

// Even-odd point-in-region test over closed polygonal loops, with segments
// bucketed by rows.
class RegionIndex {
 public:
  explicit RegionIndex(const std::vector<std::vector<cplx>>& loops) {
    y0_ = INFINITY;
    double y1 = -INFINITY;
    for (const auto& loop : loops)
      for (std::size_t i = 0; i < loop.size(); ++i) {
        seg_.push_back({loop[i], loop[(i + 1) % loop.size()]});
        y0_ = std::min(y0_, loop[i].imag());
        y1 = std::max(y1, loop[i].imag());
      }
    rows_ = std::clamp(static_cast<int>(seg_.size()), 1, 4096);
    h_ = (y1 - y0_) / rows_ + 1e-300;
    buckets_.assign(rows_, {});
    for (std::size_t i = 0; i < seg_.size(); ++i) {
      const auto [a, b] = seg_[i];
      const int r0 = row(std::min(a.imag(), b.imag())), r1 = row(std::max(a.imag(), b.imag()));
      for (int r = r0; r <= r1; ++r) buckets_[r].push_back(static_cast<int>(i));
    }
  }

  bool inside(cplx z) const {
    if (z.imag() < y0_ || z.imag() > y0_ + h_ * rows_) return false;
    bool in = false;
    for (int i : buckets_[row(z.imag())]) {
      const auto [a, b] = seg_[i];
      if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
        const double x = a.real() + (z.imag() - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
        if (x > z.real()) in = !in;
      }
    }
    return in;
  }

 private:
  int row(double y) const { return std::clamp(static_cast<int>((y - y0_) / h_), 0, rows_ - 1); }

  std::vector<std::pair<cplx, cplx>> seg_;
  double y0_ = 0.0, h_ = 1.0;
  int rows_ = 1;
  std::vector<std::vector<int>> buckets_;
};

// Boundary sample: curve index and parameter, so segments can be split.
struct Sample {
  cplx z;
  int curve;
  double s;
  BoundaryTag tag;
};

using Loop = std::vector<BoundaryCurve>;

// Target hyperbolic edge length. It is ell except inside the cusps at
// truncated ideal vertices, where it shrinks in proportion to the cusp width
// (the summed distances to the two sides meeting there) below kWidth.
struct Sizing {
  static constexpr double kWidth = 0.6;
  double ell = 0.1;
  std::vector<std::pair<BoundaryCurve, BoundaryCurve>> cusps;

  Sizing(const std::vector<Loop>& loops, double ell_) : ell(ell_) {
    for (const auto& loop : loops)
      for (std::size_t i = 0; i < loop.size(); ++i)
        if (loop[i].tag.kind == BoundaryTag::Kind::Cutoff)
          cusps.emplace_back(loop[(i + loop.size() - 1) % loop.size()], loop[(i + 1) % loop.size()]);
  }
  double width(cplx z) const {
    double w = INFINITY;
    for (const auto& [a, b] : cusps) w = std::min(w, (a.distance(z) + b.distance(z)) * conformal(z));
    return w;
  }
  double operator()(cplx z) const { return ell * std::clamp(width(z) / kWidth, 1.0 / 16.0, 1.0); }
  bool graded(cplx z) const { return width(z) < kWidth; }
};

// Parameters at (approximately) equal spacing along a curve, measured in
// hyperbolic length over the target size.
std::vector<double> equal_length_params(const BoundaryCurve& c, const Sizing& size) {
  constexpr int kFine = 512;
  std::vector<double> cum(kFine + 1, 0.0);
  for (int i = 0; i < kFine; ++i) {
    const double s0 = static_cast<double>(i) / kFine, s1 = static_cast<double>(i + 1) / kFine;
    const cplx a = c.point(s0), m = c.point(0.5 * (s0 + s1)), b = c.point(s1);
    const double len = std::abs(b - a);
    cum[i + 1] = cum[i] + len * (conformal(a) / size(a) + 4.0 * conformal(m) / size(m) + conformal(b) / size(b)) / 6.0;
  }
  const double total = cum.back();
  const int n = std::max(1, static_cast<int>(std::ceil(total - 1e-9)));
  std::vector<double> out;
  for (int k = 1; k < n; ++k) {
    const double target = total * k / n;
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    const int i = std::clamp(static_cast<int>(it - cum.begin()), 1, kFine);
    const double w = (target - cum[i - 1]) / (cum[i] - cum[i - 1]);
    out.push_back((i - 1 + w) / kFine);
  }
  return out;
}

std::vector<Sample> sample_boundary(const std::vector<BoundaryCurve>& curves, const Sizing& size) {
  std::vector<Sample> out;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const BoundaryCurve& cur = curves[c];
    out.push_back({cur.p0, static_cast<int>(c), 0.0, cur.start_tag});
    for (double s : equal_length_params(cur, size)) {
      BoundaryTag t = cur.tag;
      if (t.kind == BoundaryTag::Kind::Cutoff) t.param = s;
      out.push_back({cur.point(s), static_cast<int>(c), s, t});
    }
  }
  return out;
}

// Delaunay triangulation of a point set through boost's Voronoi diagram.
std::vector<std::array<int, 3>> delaunay(const std::vector<cplx>& pts) {
  namespace bp = boost::polygon;
  constexpr double kScale = 1 << 29;
  std::vector<bp::point_data<int>> ipts;
  ipts.reserve(pts.size());
  for (const cplx& z : pts)
    ipts.emplace_back(static_cast<int>(std::lround(z.real() * kScale)),
                      static_cast<int>(std::lround(z.imag() * kScale)));
  bp::voronoi_diagram<double> vd;
  bp::construct_voronoi(ipts.begin(), ipts.end(), &vd);
  std::vector<std::array<int, 3>> tris;
  for (const auto& v : vd.vertices()) {
    std::vector<int> ring;
    const auto* e = v.incident_edge();
    do {
      ring.push_back(static_cast<int>(e->cell()->source_index()));
      e = e->rot_next();
    } while (e != v.incident_edge());
    for (std::size_t i = 1; i + 1 < ring.size(); ++i) tris.push_back({ring[0], ring[i], ring[i + 1]});
  }
  for (auto& t : tris)
    if (signed_area(pts[t[0]], pts[t[1]], pts[t[2]]) < 0.0) std::swap(t[1], t[2]);
  return tris;
}

std::vector<std::vector<cplx>> loop_points(const std::vector<std::vector<Sample>>& bnd) {
  std::vector<std::vector<cplx>> out;
  for (const auto& loop : bnd) {
    out.emplace_back();
    for (const auto& s : loop) out.back().push_back(s.z);
  }
  return out;
}

// Interior candidates: rings of a hyperbolic triangular lattice about the
// origin, kept when inside the region and clear of the boundary layer.
std::vector<cplx> lattice_points(const std::vector<Loop>& loops, const std::vector<std::vector<cplx>>& polys,
                                 const Sizing& size) {
  const double ell = size.ell;
  double rmax = 0.0;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& poly : polys)
    for (const cplx& z : poly) {
      rmax = std::max(rmax, std::abs(z));
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
  const RegionIndex index(polys);
  std::vector<cplx> out;
  auto accept = [&](cplx z) {
    if (z.real() < x0 || z.real() > x1 || z.imag() < y0 || z.imag() > y1) return;
    if (!index.inside(z)) return;
    if (size.width(z) < Sizing::kWidth + 2.0 * ell) return;
    const double spacing = ell / conformal(z);
    for (const auto& loop : loops)
      for (const auto& c : loop)
        if (c.distance(z) < 2.3 * spacing) return;
    out.push_back(z);
  };
  accept(0.0);
  const double dr = ell * std::sqrt(3.0) / 2.0;
  const double rho_max = 2.0 * std::atanh(std::min(rmax, 1.0 - 1e-15));
  for (int k = 1; k * dr <= rho_max; ++k) {
    const double rho = k * dr;
    const double r = std::tanh(0.5 * rho);
    const int count = std::max(6, static_cast<int>(std::lround(kTwoPi * std::sinh(rho) / ell)));
    const double offset = (k % 2) ? 0.5 : 0.0;
    for (int j = 0; j < count; ++j) accept(std::polar(r, (j + offset) * kTwoPi / count));
  }
  return out;
}

// Rows of points parallel to the boundary, alternately over segment
// midpoints and over samples, at the heights of a triangular lattice. Two
// rows everywhere, and as many as fit inside the graded cusps. Points that
// crowd another curve or an earlier point are dropped.
std::vector<cplx> layer_points(const std::vector<Loop>& loops, const std::vector<std::vector<Sample>>& bnd,
                               const RegionIndex& index, const Sizing& size) {
  namespace bg = boost::geometry;
  using Point = bg::model::point<double, 2, bg::cs::cartesian>;
  using Box = bg::model::box<Point>;
  bg::index::rtree<Point, bg::index::quadratic<16>> tree;
  std::vector<cplx> out;
  auto crowded = [&](cplx z, double r) {
    const Box box(Point(z.real() - r, z.imag() - r), Point(z.real() + r, z.imag() + r));
    for (auto it = tree.qbegin(bg::index::intersects(box)); it != tree.qend(); ++it)
      if (std::hypot(bg::get<0>(*it) - z.real(), bg::get<1>(*it) - z.imag()) < r) return true;
    return false;
  };
  constexpr int kMaxRows = 64;
  const double s3 = std::sqrt(3.0);
  for (int k = 1; k <= kMaxRows; ++k) {
    bool any = false;
    for (const auto& loop : bnd)
      for (std::size_t i = 0; i < loop.size(); ++i) {
        const std::size_t n = loop.size();
        cplx base, dir;
        double h;
        if (k % 2) {
          const cplx a = loop[i].z, b = loop[(i + 1) % n].z;
          base = 0.5 * (a + b);
          dir = b - a;
          h = 0.5 * s3 * std::abs(b - a);
        } else {
          const cplx a = loop[(i + n - 1) % n].z, b = loop[(i + 1) % n].z;
          base = loop[i].z;
          dir = b - a;
          h = 0.25 * s3 * std::abs(b - a);
        }
        const cplx z = base + cplx(0.0, k * h / std::abs(dir)) * dir;
        if (k > 2 && !size.graded(z)) continue;
        if (!index.inside(z)) continue;
        const double gap = k == 1 ? 0.7 : k == 2 ? 1.5 : 0.8;
        bool keep = true;
        for (const auto& l : loops)
          for (const auto& c : l)
            if (c.distance(z) < gap * h) keep = false;
        if (!keep || crowded(z, (k == 2 ? 0.9 : 0.75) * h)) continue;
        out.push_back(z);
        tree.insert(Point(z.real(), z.imag()));
        any = true;
      }
    if (k > 2 && !any) break;
  }
  return out;
}

// Conforming Delaunay mesh of the region bounded by closed loops of curves
// (even-odd rule). Boundary segments missing from the triangulation are
// split at their curve midpoints until all are present.
Mesh mesh_region(const std::vector<Loop>& loops, const MeshGrading& g) {
  const Sizing size(loops, g.ell);
  std::vector<std::vector<Sample>> bnd;
  for (const auto& loop : loops) bnd.push_back(sample_boundary(loop, size));
  std::vector<cplx> interior = lattice_points(loops, loop_points(bnd), size);
  {
    const auto layer = layer_points(loops, bnd, RegionIndex(loop_points(bnd)), size);
    interior.insert(interior.end(), layer.begin(), layer.end());
  }
  int smooth_left = g.smoothing;

  for (int pass = 0; pass < 12 + g.smoothing; ++pass) {
    const auto polys = loop_points(bnd);
    std::vector<cplx> pts;
    std::vector<BoundaryTag> tags;
    std::vector<std::size_t> offset;
    for (const auto& loop : bnd) {
      offset.push_back(pts.size());
      for (const auto& s : loop) {
        pts.push_back(s.z);
        tags.push_back(s.tag);
      }
    }
    pts.insert(pts.end(), interior.begin(), interior.end());
    tags.resize(pts.size());

    const RegionIndex index(polys);
    std::vector<std::array<int, 3>> kept;
    for (const auto& t : delaunay(pts)) {
      const cplx c = (pts[t[0]] + pts[t[1]] + pts[t[2]]) / 3.0;
      // Rounding to the integer grid can leave slivers along straight sides.
      const double e2 = std::max({std::norm(pts[t[1]] - pts[t[0]]), std::norm(pts[t[2]] - pts[t[1]]),
                                  std::norm(pts[t[0]] - pts[t[2]])});
      if (signed_area(pts[t[0]], pts[t[1]], pts[t[2]]) <= 1e-10 * e2) continue;
      if (index.inside(c)) kept.push_back(t);
    }
    std::set<std::pair<int, int>> edges;
    for (const auto& t : kept)
      for (int k = 0; k < 3; ++k) {
        const int a = t[k], b = t[(k + 1) % 3];
        edges.insert({std::min(a, b), std::max(a, b)});
      }

    bool complete = true;
    std::vector<std::vector<Sample>> refined(bnd.size());
    for (std::size_t l = 0; l < bnd.size(); ++l) {
      const auto& loop = bnd[l];
      const std::size_t nb = loop.size();
      for (std::size_t i = 0; i < nb; ++i) {
        refined[l].push_back(loop[i]);
        const int a = static_cast<int>(offset[l] + i), b = static_cast<int>(offset[l] + (i + 1) % nb);
        if (edges.count({std::min(a, b), std::max(a, b)})) continue;
        complete = false;
        const Sample& sa = loop[i];
        const Sample& sb = loop[(i + 1) % nb];
        const double s_end = (sb.curve == sa.curve && sb.s > sa.s) ? sb.s : 1.0;
        const double s = 0.5 * (sa.s + s_end);
        const BoundaryCurve& c = loops[l][sa.curve];
        BoundaryTag t = c.tag;
        if (t.kind == BoundaryTag::Kind::Cutoff) t.param = s;
        refined[l].push_back({c.point(s), sa.curve, s, t});
      }
    }

    if (complete && smooth_left > 0) {
      // Move every interior point to the hyperbolic centroid of its
      // neighbours (computed after moving the point to the origin).
      --smooth_left;
      std::vector<std::vector<int>> nbr(pts.size());
      for (const auto& t : kept)
        for (int k = 0; k < 3; ++k) {
          nbr[t[k]].push_back(t[(k + 1) % 3]);
          nbr[t[k]].push_back(t[(k + 2) % 3]);
        }
      const std::size_t first = pts.size() - interior.size();
      for (std::size_t i = 0; i < interior.size(); ++i) {
        const auto& nb = nbr[first + i];
        if (nb.empty() || size.graded(interior[i])) continue;
        const cplx p = interior[i];
        cplx mean = 0.0;
        for (int j : nb) mean += (pts[j] - p) / (1.0 - std::conj(p) * pts[j]);
        mean /= static_cast<double>(nb.size());
        const cplx q = (mean + p) / (1.0 + std::conj(p) * mean);
        if (index.inside(q)) interior[i] = q;
      }
      continue;
    }
    if (complete) {
      Mesh m;
      m.grading = g;
      std::vector<int> remap(pts.size(), -1);
      for (const auto& t : kept)
        for (int v : t)
          if (remap[v] < 0) {
            remap[v] = static_cast<int>(m.vertices.size());
            m.vertices.push_back(pts[v]);
            m.tags.push_back(tags[v]);
          }
      for (const auto& t : kept) m.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
      return m;
    }
    bnd = std::move(refined);
  }
  throw MeshError("could not recover the boundary in the triangulation");
}

}  // namespace

cplx BoundaryCurve::point(double s) const {
  if (kind == Kind::Segment) return p0 + s * (p1 - p0);
  return center + std::polar(radius, a0 + s * sweep);
}

double BoundaryCurve::distance(cplx z) const {
  if (kind == Kind::Segment) {
    const cplx d = p1 - p0;
    const double t = std::clamp((std::conj(d) * (z - p0)).real() / std::norm(d), 0.0, 1.0);
    return std::abs(z - (p0 + t * d));
  }
  const double rel = sweep >= 0.0 ? wrap_positive(std::arg(z - center) - a0)
                                  : wrap_positive(a0 - std::arg(z - center));
  if (rel <= std::abs(sweep)) return std::abs(std::abs(z - center) - radius);
  return std::min(std::abs(z - p0), std::abs(z - p1));
}

double BoundaryCurve::hyperbolic_length() const {
  constexpr int kFine = 512;
  double total = 0.0;
  for (int i = 0; i < kFine; ++i) {
    const double s0 = static_cast<double>(i) / kFine, s1 = static_cast<double>(i + 1) / kFine;
    const cplx a = point(s0), m = point(0.5 * (s0 + s1)), b = point(s1);
    total += std::abs(b - a) * (conformal(a) + 4.0 * conformal(m) + conformal(b)) / 6.0;
  }
  return total;
}

std::vector<BoundaryCurve> truncated_boundary(const PolygonDomain& d, const MeshGrading& g) {
  if (!(g.ell > 0.0)) throw MeshError("target edge length must be positive");
  if (!(g.delta > 0.0 && g.delta < 1.0)) throw MeshError("horocycle cutoff must lie in (0, 1)");
  if (!(g.eps_arc > 0.0 && g.eps_arc < 1.0)) throw MeshError("arc offset must lie in (0, 1)");
  const std::size_t n = d.size();
  const double R = 1.0 - g.eps_arc;
  auto is_arc = [&](std::size_t e) { return d.edges()[e].kind == DomainEdge::Kind::IdealArc; };

  // Entry/exit point of each side at each end, and cutoff curves.
  std::vector<cplx> side_start(n), side_end(n);
  std::vector<BoundaryTag> start_tag(n);
  std::vector<std::optional<BoundaryCurve>> cutoff(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t prev = (k + n - 1) % n;
    const AnyPoint& v = d.vertices()[k];
    if (!is_ideal(v)) {
      side_end[prev] = side_start[k] = coordinate(v);
      start_tag[k] = tag(BoundaryTag::Kind::Corner, static_cast<int>(k));
      continue;
    }
    const cplx p = coordinate(v);
    if (is_arc(prev) && is_arc(k)) throw MeshError("two consecutive ideal arcs are not supported");
    if (is_arc(prev) || is_arc(k)) {
      const std::size_t side = is_arc(prev) ? k : prev;
      const cplx q = pick(intersect(support_of(d.edge_geodesic(side)), 0.0, R), p, false);
      side_end[prev] = side_start[k] = q;
      start_tag[k] = tag(BoundaryTag::Kind::Corner, static_cast<int>(k));
      continue;
    }
    const cplx hc = (1.0 - 0.5 * g.delta) * p;
    const double hr = 0.5 * g.delta;
    const cplx in = pick(intersect(support_of(d.edge_geodesic(prev)), hc, hr), p, true);
    const cplx out = pick(intersect(support_of(d.edge_geodesic(k)), hc, hr), p, true);
    side_end[prev] = in;
    side_start[k] = out;
    start_tag[k] = tag(BoundaryTag::Kind::Edge, static_cast<int>(k));
    const double b0 = std::arg(in - hc);
    const double ccw = wrap_positive(std::arg(out - hc) - b0);
    const bool p_on_ccw = wrap_positive(std::arg(p - hc) - b0) < ccw;
    BoundaryCurve c = circle_piece(hc, hr, b0, p_on_ccw ? ccw - kTwoPi : ccw);
    c.p0 = in;
    c.p1 = out;
    c.tag = tag(BoundaryTag::Kind::Cutoff, static_cast<int>(k));
    c.start_tag = tag(BoundaryTag::Kind::Edge, static_cast<int>(prev));
    cutoff[k] = c;
  }

  std::vector<BoundaryCurve> out;
  for (std::size_t e = 0; e < n; ++e) {
    const BoundaryTag etag = tag(BoundaryTag::Kind::Edge, static_cast<int>(e));
    if (is_arc(e)) {
      const double a_start = std::arg(side_start[e]);
      const double sweep = wrap_positive(std::arg(side_end[e]) - a_start);
      std::vector<double> cuts;
      for (double j : d.edges()[e].data.jump_angles()) {
        const double rel = wrap_positive(j - a_start);
        if (rel > 1e-12 && rel < sweep - 1e-12) cuts.push_back(rel);
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.push_back(sweep);
      double from = 0.0;
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        BoundaryCurve c = circle_piece(0.0, R, a_start + from, cuts[i] - from);
        if (i == 0) c.p0 = side_start[e];
        if (i + 1 == cuts.size()) c.p1 = side_end[e];
        c.tag = etag;
        c.start_tag = i == 0 ? start_tag[e] : etag;
        out.push_back(c);
        from = cuts[i];
      }
    } else {
      BoundaryCurve c = geodesic_piece(support_of(d.edge_geodesic(e)), side_start[e], side_end[e]);
      c.tag = etag;
      c.start_tag = start_tag[e];
      out.push_back(c);
    }
    const std::size_t next = (e + 1) % n;
    if (cutoff[next]) out.push_back(*cutoff[next]);
  }
  return out;
}

Mesh triangulate(const PolygonDomain& d, const MeshGrading& g) {
  return mesh_region({truncated_boundary(d, g)}, g);
}

Mesh annulus_mesh(double r_inner, double r_outer, double ell) {
  if (!(r_inner > 0.0 && r_inner < r_outer && r_outer < 1.0))
    throw MeshError("annulus radii must satisfy 0 < r1 < r2 < 1");
  MeshGrading g;
  g.ell = ell;
  BoundaryCurve outer = circle_piece(0.0, r_outer, 0.0, kTwoPi);
  outer.tag = outer.start_tag = tag(BoundaryTag::Kind::Edge, 1);
  BoundaryCurve inner = circle_piece(0.0, r_inner, 0.0, -kTwoPi);
  inner.tag = inner.start_tag = tag(BoundaryTag::Kind::Edge, 0);
  return mesh_region({{outer}, {inner}}, g);
}

namespace {

double edge_value(const PolygonDomain& d, std::size_t e, cplx z, double truncation) {
  const DomainEdge& edge = d.edges()[e];
  if (edge.kind == DomainEdge::Kind::GeodesicSide) return edge.data.value_at(0.0, truncation);
  const double start = std::get<IdealPoint>(d.edge_start(e)).angle();
  double rel = wrap_positive(std::arg(z) - start);
  if (rel > kTwoPi - 1e-9) rel = 0.0;
  return edge.data.value_at(start + rel, truncation);
}

}  // namespace

std::vector<double> boundary_values(const PolygonDomain& d, const Mesh& m, double truncation) {
  const std::size_t n = d.size();
  std::vector<double> u(m.vertices.size(), 0.0);
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const BoundaryTag& t = m.tags[v];
    const cplx z = m.vertices[v];
    switch (t.kind) {
      case BoundaryTag::Kind::Interior:
        break;
      case BoundaryTag::Kind::Edge:
        u[v] = edge_value(d, t.index, z, truncation);
        break;
      case BoundaryTag::Kind::Cutoff: {
        const std::size_t prev = (t.index + n - 1) % n;
        const double a = edge_value(d, prev, z, truncation);
        const double b = edge_value(d, t.index, z, truncation);
        u[v] = (1.0 - t.param) * a + t.param * b;
        break;
      }
      case BoundaryTag::Kind::Corner: {
        const std::size_t k = t.index;
        const std::size_t prev = (k + n - 1) % n;
        const AnyPoint& vert = d.vertices()[k];
        // Evaluate arc data at the ideal vertex itself, not at the truncated corner.
        const cplx at = is_ideal(vert) ? coordinate(vert) : z;
        u[v] = 0.5 * (edge_value(d, prev, at, truncation) + edge_value(d, k, at, truncation));
        break;
      }
    }
  }
  return u;
}

}  // namespace hsurf
