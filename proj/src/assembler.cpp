#include "hsurf/assembler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "hsurf/jenkins_serrin.hpp"
#include "hsurf/keyvalue.hpp"
#include "hsurf/mesher.hpp"

namespace hsurf {

HeightExpr HeightExpr::value(Rational c_h, int f_sign) {
  if (f_sign < -1 || f_sign > 1) throw std::invalid_argument("f coefficient must be -1, 0 or 1");
  HeightExpr e;
  e.c_h_ = std::move(c_h);
  e.f_sign_ = f_sign;
  return e;
}

HeightExpr HeightExpr::plus_infinity() {
  HeightExpr e;
  e.kind_ = Kind::PlusInfinity;
  return e;
}

HeightExpr HeightExpr::minus_infinity() {
  HeightExpr e;
  e.kind_ = Kind::MinusInfinity;
  return e;
}

HeightExpr HeightExpr::shifted(const Rational& c) const {
  if (!is_finite()) return *this;
  return value(c_h_ + c, f_sign_);
}

HeightExpr HeightExpr::negated() const {
  if (kind_ == Kind::PlusInfinity) return minus_infinity();
  if (kind_ == Kind::MinusInfinity) return plus_infinity();
  return value(-c_h_, -f_sign_);
}

HeightExpr HeightExpr::reflected(const Rational& c) const { return negated().shifted(2 * c); }

double HeightExpr::evaluate(double h, double f) const {
  if (kind_ == Kind::PlusInfinity) return INFINITY;
  if (kind_ == Kind::MinusInfinity) return -INFINITY;
  return to_double(c_h_) * h + f_sign_ * f;
}

std::string HeightExpr::str() const {
  if (kind_ == Kind::PlusInfinity) return "+inf";
  if (kind_ == Kind::MinusInfinity) return "-inf";
  std::string s;
  if (c_h_ != 0 || f_sign_ == 0) s = (c_h_ == 1 ? std::string() : c_h_ == -1 ? "-" : to_string(c_h_)) + "h";
  if (c_h_ == 0 && f_sign_ == 0) s = "0";
  if (f_sign_ > 0) s += s.empty() ? "f" : "+f";
  if (f_sign_ < 0) s += "-f";
  return s;
}

DiffRange difference(const HeightExpr& a, const HeightExpr& b, const Rational& f_lo, const Rational& f_hi) {
  const auto rank = [](const HeightExpr& e) {
    return e.kind() == HeightExpr::Kind::PlusInfinity ? 1 : e.kind() == HeightExpr::Kind::MinusInfinity ? -1 : 0;
  };
  if (!a.is_finite() || !b.is_finite()) {
    const Rational s{rank(a) - rank(b) > 0 ? 1 : rank(a) - rank(b) < 0 ? -1 : 0};
    return {s, s};
  }
  const Rational dc = a.c_h() - b.c_h();
  const int df = a.f_sign() - b.f_sign();
  const Rational x = dc + df * f_lo, y = dc + df * f_hi;
  return {std::min(x, y), std::max(x, y)};
}

SheetFamily scherk_sheets(int n) {
  if (n < 1) throw InvalidData("n must be a positive integer");
  return {4 * n, Rational{4 * n}, false};
}

SheetFamily helicoidal_sheets(int m) {
  if (m < 1) throw InvalidData("m must be a positive integer");
  return {2 * m, Rational{2 * m}, true};
}

namespace {

// Sheet of the reflected surface over sector i (1-based) with k = 0, and
// the word of its placement.
Sheet base_sheet(const SheetFamily& fam, int i) {
  const HeightExpr outer = fam.helicoidal ? HeightExpr::value(0, 1) : HeightExpr::plus_infinity();
  if (i % 2 == 1) {
    const int j = (i - 1) / 2;
    return {{HeightExpr::value(2 * j), HeightExpr::value(2 * j + 1), outer.shifted(2 * j)},
            j == 0 ? "e" : "S^" + std::to_string(j)};
  }
  // even sector: S^j b with b the reflection across the second edge at height h
  const int j = (i - 2) / 2;
  const HeightExpr o = outer.reflected(1).shifted(2 * j);
  return {{HeightExpr::value(2 * j + 1), HeightExpr::value(2 * j + 2), o},
          (j == 0 ? std::string() : "S^" + std::to_string(j) + ".") + "b"};
}

}  // namespace

SheetStack sheet_stack(const SheetFamily& fam, int sector, int k_window) {
  if (sector < 1 || sector > fam.sectors) throw InvalidData("sector index out of range");
  SheetStack st;
  st.sector = sector;
  const int half = fam.sectors / 2;
  const int mirror = sector > half ? sector - half : sector + half;
  const Sheet own = base_sheet(fam, sector);
  Sheet ax = base_sheet(fam, mirror);
  ax.word = "v" + (ax.word == "e" ? std::string() : "." + ax.word);
  for (const Sheet* s : {&own, static_cast<const Sheet*>(&ax)})
    for (int k = -k_window; k <= k_window; ++k) {
      Sheet t = *s;
      for (auto& v : t.values) v = v.shifted(fam.period * k);
      if (k != 0) t.word = "T^" + std::to_string(k) + "." + t.word;
      st.sheets.push_back(std::move(t));
    }
  std::stable_sort(st.sheets.begin(), st.sheets.end(),
                   [](const Sheet& a, const Sheet& b) { return a.values[0].c_h() < b.values[0].c_h(); });
  return st;
}

SheetStack sheet_stack(int n, double h, int sector, int k_window) {
  if (!(h > 0.0)) throw InvalidData("h must be positive");
  return sheet_stack(scherk_sheets(n), sector, k_window);
}

HelicoidalSheetValues helicoidal_sheet_values(int m) {
  const SheetFamily fam = helicoidal_sheets(m);
  return {base_sheet(fam, m + 1).values, base_sheet(fam, 1).values};
}

const Generator& SurfaceComplex::generator(const std::string& name) const {
  for (const auto& g : generators)
    if (g.name == name) return g;
  throw std::out_of_range("no generator named " + name);
}

SurfaceComplex make_complex(std::string family, GraphSolution piece, std::vector<Generator> generators) {
  SurfaceComplex c;
  c.family = std::move(family);
  c.piece = std::make_shared<const GraphSolution>(std::move(piece));
  c.locator = std::make_shared<const MeshLocator>(c.piece->mesh);
  c.generators = std::move(generators);
  c.placements.push_back({"e", IsometryH2xR::identity(), 0});
  return c;
}

SurfaceComplex orbit(SurfaceComplex c, int L) {
  if (L < 0) throw std::invalid_argument("word length must be nonnegative");
  constexpr double kTol = 1e-10;
  c.word_length = L;
  c.placements.assign(1, {"e", IsometryH2xR::identity(), 0});
  std::size_t level_begin = 0;
  for (int len = 1; len <= L; ++len) {
    const std::size_t level_end = c.placements.size();
    for (std::size_t p = level_begin; p < level_end; ++p)
      for (const auto& g : c.generators) {
        const IsometryH2xR iso = compose(g.iso, c.placements[p].iso);
        const bool seen = std::any_of(c.placements.begin(), c.placements.end(),
                                      [&](const Placement& q) { return q.iso.approx_equal(iso, kTol); });
        if (seen) continue;
        const std::string& w = c.placements[p].word;
        c.placements.push_back({w == "e" ? g.name : g.name + "." + w, iso, len});
      }
    level_begin = level_end;
  }
  return c;
}

namespace {

Rational exact_coefficient(double value, double unit) {
  if (!(unit > 0.0)) throw InvalidData("height unit must be positive");
  const Rational c{value / unit};
  if (to_double(c) * unit != value) throw InvalidData("edge height is not an exact multiple of the unit");
  return c;
}

}  // namespace

Placement schwarz_reflect_horizontal(const GraphSolution& piece, int edge, double unit) {
  if (!piece.domain) throw InvalidData("piece carries no domain");
  const PolygonDomain& d = *piece.domain;
  if (edge < 0 || static_cast<std::size_t>(edge) >= d.size()) throw InvalidData("edge index out of range");
  const DomainEdge& e = d.edges()[edge];
  if (e.kind != DomainEdge::Kind::GeodesicSide || e.data.kind() != EdgeData::Kind::Constant)
    throw InvalidData("reflection needs constant data on a geodesic side");
  const Rational c = exact_coefficient(e.data.constant_value(), unit);
  return {"r" + std::to_string(edge), half_turn_about(d.edge_geodesic(edge), c, unit), 1};
}

Placement axis_reflect(const GraphSolution& piece, const Axis& axis, double unit) {
  if (const auto* h = std::get_if<HorizontalAxis>(&axis)) return schwarz_reflect_horizontal(piece, h->edge, unit);
  if (!piece.domain) throw InvalidData("piece carries no domain");
  bool on_boundary = false;
  for (const auto& v : piece.domain->vertices())
    if (!is_ideal(v) && std::abs(coordinate(v)) == 0.0) on_boundary = true;
  if (!on_boundary) throw InvalidData("the vertical axis is not on the boundary of the piece");
  return {"v", axis_half_turn(), 1};
}

std::vector<SheetValue> evaluate(const SurfaceComplex& c, cplx z) {
  std::vector<SheetValue> out;
  for (std::size_t p = 0; p < c.placements.size(); ++p) {
    const IsometryH2xR& iso = c.placements[p].iso;
    const cplx w = iso.disk().inverse().apply(z);
    const auto u = c.locator->interpolate(w, c.piece->u);
    if (u) out.push_back({p, iso.apply_height(*u)});
  }
  return out;
}

void write_obj(std::ostream& os, const SurfaceComplex& c) {
  const Mesh& m = c.piece->mesh;
  os << "# hsurf obj: family " << c.family << ", " << c.placements.size() << " placements, "
     << m.vertices.size() << " vertices each\n";
  std::size_t base = 1;
  for (const auto& p : c.placements) {
    os << "g " << p.word << "\n";
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
      const cplx z = p.iso.apply_disk(m.vertices[v]);
      os << "v " << format_double(z.real()) << " " << format_double(z.imag()) << " "
         << format_double(p.iso.apply_height(c.piece->u[v])) << "\n";
    }
    const bool reverse = p.iso.disk().conjugate;
    for (const auto& t : m.triangles) {
      os << "f " << base + t[0];
      if (reverse)
        os << " " << base + t[2] << " " << base + t[1] << "\n";
      else
        os << " " << base + t[1] << " " << base + t[2] << "\n";
    }
    base += m.vertices.size();
  }
}

const std::vector<std::string> kFamilies{"helicoidal-scherk", "helicoidal", "axis-at-infinity-scherk",
                                         "axis-at-infinity-helicoidal", "non-periodic"};

PolygonDomain family_domain(const FamilyParams& p) {
  const auto need_f = [&]() -> const EdgeData& {
    if (!p.f) throw InvalidData("family " + p.family + " needs boundary data f");
    return *p.f;
  };
  if (p.family == "helicoidal-scherk") return generalized_scherk_polygon(p.n, p.h, p.qs);
  if (p.family == "helicoidal") return helicoidal_sector(p.m, p.h, need_f());
  if (p.family == "axis-at-infinity-scherk") return axis_at_infinity_domain(p.theta, p.h, AxisScherkVariant{p.qs});
  if (p.family == "axis-at-infinity-helicoidal")
    return axis_at_infinity_domain(p.theta, p.h, AxisHelicoidalVariant{need_f()});
  if (p.family == "non-periodic") return nonperiodic_domain(p.theta, need_f());
  throw InvalidData("unknown family '" + p.family + "'");
}

namespace {

// Index of the geodesic side with constant data `value`.
int constant_side(const PolygonDomain& d, double value) {
  for (std::size_t e = 0; e < d.size(); ++e) {
    const DomainEdge& ed = d.edges()[e];
    if (ed.kind == DomainEdge::Kind::GeodesicSide && ed.data.kind() == EdgeData::Kind::Constant &&
        ed.data.constant_value() == value)
      return static_cast<int>(e);
  }
  throw InvalidData("domain has no side with constant data " + format_double(value));
}

IsometryH2xR reflect_side(const PolygonDomain& d, int edge, double unit) {
  const double value = d.edges()[edge].data.constant_value();
  return half_turn_about(d.edge_geodesic(edge), exact_coefficient(value, unit), unit);
}

}  // namespace

std::vector<Generator> family_generators(const FamilyParams& p, const PolygonDomain& d) {
  if (p.family == "non-periodic") {
    // half-turn about the side at height 0, then the vertical axis
    return {{"r", reflect_side(d, constant_side(d, 0.0), 1.0)}, {"v", axis_half_turn()}};
  }
  const IsometryH2xR a = reflect_side(d, constant_side(d, 0.0), p.h);
  const IsometryH2xR b = reflect_side(d, constant_side(d, p.h), p.h);
  const IsometryH2xR screw = compose(b, a);
  if (p.family == "axis-at-infinity-scherk" || p.family == "axis-at-infinity-helicoidal")
    return {{"P", screw}, {"P^-1", screw.inverse()}, {"a", a}};
  const int period = p.family == "helicoidal" ? 2 * p.m : 4 * p.n;
  const IsometryH2xR T = vertical_translation(Rational{period}, p.h);
  return {{"S", screw}, {"S^-1", screw.inverse()}, {"T", T}, {"T^-1", T.inverse()}, {"a", a},
          {"v", axis_half_turn()}};
}

Assembly assemble_family(const FamilyParams& p, const AssemblyOptions& opt) {
  PolygonDomain d = family_domain(p);
  if (d.has_infinite_data()) {
    const JSCertificate cert = jenkins_serrin_certify(d);
    if (!cert.admissible) throw ParameterError("domain fails the Jenkins-Serrin condition");
  }
  Mesh mesh = triangulate(d, opt.grading);
  std::vector<double> Ms = opt.truncations;
  if (Ms.empty()) throw ParameterError("at least one truncation height is needed");
  if (!d.has_infinite_data()) Ms = {Ms.back()};
  SweepResult sweep = truncation_sweep(d, mesh, Ms, opt.solver);

  SurfaceComplex c = make_complex(p.family, sweep.solutions.back(), family_generators(p, d));
  if (p.family == "non-periodic")
    c.symmetries = {"half-turn about the horizontal side at height 0", "half-turn about the vertical axis"};
  else if (p.family == "axis-at-infinity-scherk" || p.family == "axis-at-infinity-helicoidal")
    c.symmetries = {"half-turn about the side at height 0", "half-turn about the side at height h",
                    "parabolic screw motion P"};
  else
    c.symmetries = {"half-turn about the side at height 0", "half-turn about the side at height h",
                    "half-turn about the vertical axis", "screw motion S", "vertical translation T"};
  c = orbit(std::move(c), opt.word_length);
  return {std::move(d), std::move(mesh), std::move(sweep), std::move(c)};
}

}  // namespace hsurf
