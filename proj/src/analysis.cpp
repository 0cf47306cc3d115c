#include "hsurf/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <set>

#include "hsurf/keyvalue.hpp"

namespace hsurf {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Embedded:
      return "embedded";
    case Verdict::EmbeddedIff:
      return "embedded-iff";
    case Verdict::Unknown:
      break;
  }
  return "unknown";
}

namespace {

SheetFamily rotational_family(const FamilyParams& p) {
  if (p.family == "helicoidal-scherk") return scherk_sheets(p.n);
  if (p.family == "helicoidal") return helicoidal_sheets(p.m);
  throw InvalidData("the symbolic check applies to helicoidal-scherk and helicoidal families only");
}

struct PairOrder {
  bool may_pos = false, may_neg = false, pos = false, neg = false;
};

PairOrder order(const Sheet& a, const Sheet& b, const Rational& lo, const Rational& hi) {
  PairOrder o;
  for (int e = 0; e < 3; ++e) {
    const DiffRange d = difference(a.values[e], b.values[e], lo, hi);
    o.may_pos |= d.hi > 0;
    o.may_neg |= d.lo < 0;
    o.pos |= d.lo > 0;
    o.neg |= d.hi < 0;
  }
  return o;
}

// First offending pair over [lo, hi], if any.
std::optional<SheetWitness> first_violation(const std::vector<SheetStack>& stacks, const Rational& lo,
                                            const Rational& hi, int* pairs) {
  for (const auto& st : stacks)
    for (std::size_t i = 0; i < st.sheets.size(); ++i)
      for (std::size_t j = i + 1; j < st.sheets.size(); ++j) {
        if (pairs) ++*pairs;
        const PairOrder o = order(st.sheets[i], st.sheets[j], lo, hi);
        if (o.may_pos && o.may_neg) return SheetWitness{st.sector, st.sheets[i], st.sheets[j], o.pos && o.neg};
      }
  return std::nullopt;
}

}  // namespace

EmbeddingReport symbolic_embedding_check(const FamilyParams& p,
                                         const std::optional<std::pair<Rational, Rational>>& f_range,
                                         int k_window) {
  const SheetFamily fam = rotational_family(p);
  std::vector<SheetStack> stacks;
  for (int i = 1; i <= fam.sectors; ++i) stacks.push_back(sheet_stack(fam, i, k_window));

  EmbeddingReport r;
  if (f_range || !fam.helicoidal) {
    const Rational lo = f_range ? f_range->first : Rational{0};
    const Rational hi = f_range ? f_range->second : Rational{0};
    if (lo > hi) throw InvalidData("empty f range");
    r.witness = first_violation(stacks, lo, hi, &r.pairs_checked);
    r.verdict = r.witness ? Verdict::Unknown : Verdict::Embedded;
    return r;
  }

  // Derive the admissible set of f / h: ordering of a pair can only change
  // where one of its edge differences vanishes.
  std::set<Rational> breaks;
  for (const auto& st : stacks)
    for (std::size_t i = 0; i < st.sheets.size(); ++i)
      for (std::size_t j = i + 1; j < st.sheets.size(); ++j)
        for (int e = 0; e < 3; ++e) {
          const HeightExpr& a = st.sheets[i].values[e];
          const HeightExpr& b = st.sheets[j].values[e];
          if (!a.is_finite() || !b.is_finite()) continue;
          const int df = a.f_sign() - b.f_sign();
          if (df != 0) breaks.insert(Rational{-(a.c_h() - b.c_h()) / df});
        }
  std::vector<Rational> cand;
  if (breaks.empty()) cand.push_back(0);
  for (auto it = breaks.begin(); it != breaks.end(); ++it) {
    if (it == breaks.begin()) cand.push_back(*it - 1);
    cand.push_back(*it);
    const auto next = std::next(it);
    cand.push_back(next == breaks.end() ? Rational{*it + 1} : Rational{(*it + *next) / 2});
  }
  std::vector<bool> ok;
  std::optional<SheetWitness> witness;
  for (const Rational& x : cand) {
    auto w = first_violation(stacks, x, x, &r.pairs_checked);
    ok.push_back(!w);
    if (w && !witness) witness = w;
  }
  const auto first = std::find(ok.begin(), ok.end(), true);
  if (first == ok.end()) {
    r.verdict = Verdict::Unknown;
    r.witness = witness;
    return r;
  }
  if (std::find(ok.begin(), ok.end(), false) == ok.end()) {
    r.verdict = Verdict::Embedded;
    return r;
  }
  const auto last = std::find(ok.rbegin(), ok.rend(), true).base() - 1;
  if (std::find(first, last + 1, false) != last + 1) {
    // not a single interval
    r.verdict = Verdict::Unknown;
    r.witness = witness;
    return r;
  }
  const bool below = first == ok.begin(), above = last == ok.end() - 1;
  const Rational lo = cand[first - ok.begin()], hi = cand[last - ok.begin()];
  r.verdict = Verdict::EmbeddedIff;
  if (!below && !above) r.f_interval = std::make_pair(lo, hi);
  r.condition = below ? "f/h <= " + to_string(hi)
                : above ? to_string(lo) + " <= f/h"
                        : to_string(lo) + " <= f/h <= " + to_string(hi);
  r.witness = witness;
  return r;
}

namespace {

struct PairStats {
  double lo = INFINITY, hi = -INFINITY;
  double closest = INFINITY;
  cplx where{0.0, 0.0};
};

SeparationReport summarize(const std::map<std::pair<std::size_t, std::size_t>, PairStats>& stats, double h) {
  SeparationReport r;
  for (const auto& [key, s] : stats) {
    ++r.pairs;
    double gap;
    bool crossing = false;
    if (s.lo > 0.0)
      gap = s.lo;
    else if (s.hi < 0.0)
      gap = -s.hi;
    else {
      crossing = true;
      gap = -std::min(-s.lo, s.hi);
    }
    if (gap < r.min_gap) {
      r.min_gap = gap;
      r.location = s.where;
      r.pair = key;
    }
    r.crossing |= crossing;
  }
  r.min_gap_h = r.min_gap / h;
  return r;
}

}  // namespace

SeparationReport numeric_sheet_separation(const SurfaceComplex& c, int samples, double margin) {
  const GraphSolution& piece = *c.piece;
  std::vector<cplx> probes = piece.domain ? probe_points(*piece.domain, piece.mesh, margin) : std::vector<cplx>{};
  if (!piece.domain)
    for (int v : piece.mesh.interior_vertices()) probes.push_back(piece.mesh.vertices[v]);
  if (samples > 0 && probes.size() > static_cast<std::size_t>(samples)) {
    std::vector<cplx> sub;
    const double step = static_cast<double>(probes.size()) / samples;
    for (int i = 0; i < samples; ++i) sub.push_back(probes[static_cast<std::size_t>(i * step)]);
    probes = std::move(sub);
  }
  double h = 1.0;
  if (piece.domain)
    if (auto v = piece.domain->param("h")) h = *v;

  std::map<std::pair<std::size_t, std::size_t>, PairStats> stats;
  for (const auto& pl : c.placements)
    for (const cplx& w : probes) {
      const cplx z = pl.iso.apply_disk(w);
      const auto vals = evaluate(c, z);
      for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j) {
          PairStats& s = stats[{vals[i].placement, vals[j].placement}];
          const double d = vals[j].height - vals[i].height;
          s.lo = std::min(s.lo, d);
          s.hi = std::max(s.hi, d);
          if (std::abs(d) < s.closest) {
            s.closest = std::abs(d);
            s.where = z;
          }
        }
    }
  SeparationReport r = summarize(stats, h);
  r.probes = static_cast<int>(probes.size() * c.placements.size());
  return r;
}

SeparationReport graph_separation(const GraphSolution& lower, const GraphSolution& upper) {
  if (lower.mesh.vertices != upper.mesh.vertices) throw InvalidData("graphs are not on a shared mesh");
  PairStats s;
  int n = 0;
  for (int v : lower.mesh.interior_vertices()) {
    const double d = upper.u[v] - lower.u[v];
    ++n;
    s.lo = std::min(s.lo, d);
    s.hi = std::max(s.hi, d);
    if (d <= s.lo) s.where = lower.mesh.vertices[v];
  }
  SeparationReport r;
  r.min_gap = s.lo;
  r.crossing = s.lo < 0.0;
  r.location = s.where;
  r.pair = {0, 1};
  r.probes = n;
  r.pairs = 1;
  double h = 1.0;
  if (lower.domain)
    if (auto v = lower.domain->param("h")) h = *v;
  r.min_gap_h = r.min_gap / h;
  return r;
}

double lifted_edge_length(cplx za, double ua, cplx zb, double ub) {
  static constexpr std::array<double, 3> kNode{0.1127016653792583, 0.5, 0.8872983346207417};
  static constexpr std::array<double, 3> kWeight{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  const double dz = std::abs(zb - za), du = ub - ua;
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const cplx z = za + kNode[i] * (zb - za);
    const double lam = 2.0 / (1.0 - std::norm(z));
    s += kWeight[i] * std::sqrt(lam * lam * dz * dz + du * du);
  }
  return s;
}

std::string to_string(CurvatureReport::Trend t) {
  switch (t) {
    case CurvatureReport::Trend::Converging:
      return "converging";
    case CurvatureReport::Trend::Diverging:
      return "diverging";
    case CurvatureReport::Trend::Inconclusive:
      break;
  }
  return "inconclusive";
}

CurvatureLevel piece_curvature(const GraphSolution& piece, double level) {
  const Mesh& m = piece.mesh;
  std::vector<double> angle_sum(m.vertices.size(), 0.0);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    double len[3];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[(i + 1) % 3], b = tri[(i + 2) % 3];
      len[i] = lifted_edge_length(m.vertices[a], piece.u[a], m.vertices[b], piece.u[b]);
    }
    for (int i = 0; i < 3; ++i) {
      const double a = len[i], b = len[(i + 1) % 3], c = len[(i + 2) % 3];
      if (!(a < b + c && b < a + c && c < a + b))
        throw MeshQualityError("lifted triangle " + std::to_string(t) + " violates the triangle inequality");
      angle_sum[tri[i]] += std::acos(std::clamp((b * b + c * c - a * a) / (2.0 * b * c), -1.0, 1.0));
    }
  }

  // boundary vertices inside a geodesic side lift to horizontal geodesics
  std::vector<bool> geodesic_side(piece.domain ? piece.domain->size() : 0, false);
  if (piece.domain)
    for (std::size_t e = 0; e < piece.domain->size(); ++e)
      geodesic_side[e] = piece.domain->edges()[e].kind == DomainEdge::Kind::GeodesicSide;

  // A vertex is inside a side when both neighbours along the boundary carry
  // the same side tag; the ends of a side keep their exterior angle.
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& tri : m.triangles)
    for (int i = 0; i < 3; ++i) {
      const int a = tri[i], b = tri[(i + 1) % 3];
      ++edge_count[{std::min(a, b), std::max(a, b)}];
    }
  std::vector<std::vector<int>> along(m.vertices.size());
  for (const auto& [e, count] : edge_count)
    if (count == 1) {
      along[e.first].push_back(e.second);
      along[e.second].push_back(e.first);
    }
  auto same_side = [&](int v, int w) {
    return m.tags[w].kind == BoundaryTag::Kind::Edge && m.tags[w].index == m.tags[v].index;
  };

  CurvatureLevel r;
  r.level = level;
  r.ell = m.grading.ell;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const BoundaryTag& tag = m.tags[v];
    if (!tag.on_boundary()) {
      r.total_curvature += 2.0 * std::numbers::pi - angle_sum[v];
      continue;
    }
    bool analytic = tag.kind == BoundaryTag::Kind::Edge && tag.index >= 0 &&
                    static_cast<std::size_t>(tag.index) < geodesic_side.size() && geodesic_side[tag.index] &&
                    along[v].size() == 2;
    for (int w : along[v]) analytic = analytic && same_side(static_cast<int>(v), w);
    if (!analytic) r.boundary_term += std::numbers::pi - angle_sum[v];
  }
  r.gb_residual = std::abs(r.total_curvature + r.boundary_term - 2.0 * std::numbers::pi);
  return r;
}

CurvatureReport total_curvature(const std::vector<GraphSolution>& pieces, const std::vector<double>& levels) {
  if (pieces.size() != levels.size()) throw std::invalid_argument("one level value per piece is needed");
  CurvatureReport r;
  for (std::size_t i = 0; i < pieces.size(); ++i) r.levels.push_back(piece_curvature(pieces[i], levels[i]));
  if (r.levels.size() < 3) return r;
  std::vector<double> diff;
  for (std::size_t i = 1; i < r.levels.size(); ++i)
    diff.push_back(std::abs(r.levels[i].total_curvature - r.levels[i - 1].total_curvature));
  bool shrinking = true, growing = true;
  for (std::size_t i = 1; i < diff.size(); ++i) {
    shrinking &= diff[i] < diff[i - 1];
    growing &= diff[i] >= diff[i - 1];
  }
  for (std::size_t i = 1; i < r.levels.size(); ++i)
    growing &= std::abs(r.levels[i].total_curvature) > std::abs(r.levels[i - 1].total_curvature);
  r.verdict = shrinking ? CurvatureReport::Trend::Converging
              : growing ? CurvatureReport::Trend::Diverging
                        : CurvatureReport::Trend::Inconclusive;
  return r;
}

AccumulationReport accumulation_diagnostic(const SurfaceComplex& c, const Geodesic& plane, double eps,
                                           const std::vector<double>& Ks) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Mesh& m = c.piece->mesh;
  AccumulationReport r;
  r.eps = eps;

  std::vector<int> bnd = m.boundary_vertices();
  double diameter = 0.0;
  for (std::size_t i = 0; i < bnd.size(); ++i)
    for (std::size_t j = i + 1; j < bnd.size(); ++j)
      diameter = std::max(diameter, hyp_distance(m.vertices[bnd[i]], m.vertices[bnd[j]]));
  r.vacuous = eps > diameter;

  for (std::size_t p = 0; p < c.placements.size(); ++p) {
    const IsometryH2xR& iso = c.placements[p].iso;
    CopyNearPlane cp;
    cp.placement = p;
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
      if (distance_to_geodesic(plane, iso.apply_disk(m.vertices[v])) >= eps) continue;
      const double t = iso.apply_height(c.piece->u[v]);
      if (cp.points == 0) {
        cp.t_min = cp.t_max = t;
        cp.min_abs = std::abs(t);
      }
      cp.t_min = std::min(cp.t_min, t);
      cp.t_max = std::max(cp.t_max, t);
      cp.min_abs = std::min(cp.min_abs, std::abs(t));
      ++cp.points;
    }
    if (cp.points > 0) r.copies.push_back(cp);
  }
  r.accumulates = !Ks.empty();
  for (double K : Ks) {
    bool hit = r.vacuous;
    for (const auto& cp : r.copies) hit |= cp.min_abs > K;
    r.heights.emplace_back(K, hit);
    r.accumulates &= hit;
  }
  return r;
}

std::string to_string(NonperiodicEmbedding e) {
  return e == NonperiodicEmbedding::Guaranteed ? "embedded-guaranteed" : "not-guaranteed";
}

NonperiodicEmbedding nonperiodic_embedding_flag(double theta, const EdgeData& f) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) throw InvalidData("theta must lie in (0, pi)");
  if (theta <= std::numbers::pi / 2) return NonperiodicEmbedding::Guaranteed;
  if (f.is_infinite()) throw InvalidData("f must be finite");
  return f.finite_range().first > 0.0 ? NonperiodicEmbedding::Guaranteed : NonperiodicEmbedding::NotGuaranteed;
}

void write_curvature_csv(std::ostream& os, const CurvatureReport& r) {
  os << "level,ell,total_curvature,boundary_term,gb_residual\n";
  for (const auto& l : r.levels)
    os << format_double(l.level) << "," << format_double(l.ell) << "," << format_double(l.total_curvature) << ","
       << format_double(l.boundary_term) << "," << format_double(l.gb_residual) << "\n";
}

void write_separation_csv(std::ostream& os, const SeparationReport& r) {
  os << "min_gap,min_gap_h,x,y,first,second,crossing,probes,pairs\n";
  os << format_double(r.min_gap) << "," << format_double(r.min_gap_h) << "," << format_double(r.location.real())
     << "," << format_double(r.location.imag()) << "," << r.pair.first << "," << r.pair.second << ","
     << (r.crossing ? 1 : 0) << "," << r.probes << "," << r.pairs << "\n";
}

void write_accumulation_csv(std::ostream& os, const AccumulationReport& r, const SurfaceComplex& c) {
  os << "word,points,t_min,t_max,min_abs_t\n";
  for (const auto& cp : r.copies)
    os << c.placements[cp.placement].word << "," << cp.points << "," << format_double(cp.t_min) << ","
       << format_double(cp.t_max) << "," << format_double(cp.min_abs) << "\n";
}

}  // namespace hsurf
