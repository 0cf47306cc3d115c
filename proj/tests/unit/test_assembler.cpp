#include <doctest.h>

#include <set>
#include <sstream>

#include "hsurf/analysis.hpp"
#include "hsurf/mesher.hpp"

using namespace hsurf;
using std::numbers::pi;

namespace {

GraphSolution scherk_piece(double h) {
  const auto d = scherk_triangle(2, h);
  MeshGrading g;
  g.ell = 0.2;
  return solve(triangulate(d, g), d, 4.0);
}

}  // namespace

TEST_CASE("height expressions") {
  const HeightExpr a = HeightExpr::value(Rational(2), 1);
  CHECK(a.shifted(Rational(3)).c_h() == Rational(5));
  CHECK(a.negated().f_sign() == -1);
  CHECK(a.reflected(Rational(1)) == HeightExpr::value(Rational(0), -1));
  CHECK(a.evaluate(0.5, 2.0) == doctest::Approx(3.0));
  CHECK(HeightExpr::plus_infinity().negated() == HeightExpr::minus_infinity());
  const DiffRange r = difference(a, HeightExpr::value(Rational(1)), Rational(-1), Rational(2));
  CHECK(r.lo == Rational(0));
  CHECK(r.hi == Rational(3));
}

TEST_CASE("sheet stack over the first sector") {
  const int n = 2;
  const SheetStack st = sheet_stack(n, 1.0, 1, 2);
  std::set<Rational> firsts;
  for (const auto& s : st.sheets) {
    CHECK(s.values[1].c_h() - s.values[0].c_h() == Rational(1));
    CHECK(s.values[2] == HeightExpr::plus_infinity());
    firsts.insert(s.values[0].c_h());
  }
  for (int k = -2; k <= 2; ++k) CHECK(firsts.count(Rational(4 * k * n)) == 1);
}

TEST_CASE("helicoidal sheet values over sector m+1") {
  const auto even = helicoidal_sheet_values(4);
  CHECK(even.sector_m1[0] == HeightExpr::value(Rational(4)));
  CHECK(even.sector_m1[1] == HeightExpr::value(Rational(5)));
  CHECK(even.sector_m1[2] == HeightExpr::value(Rational(4), 1));
  const auto odd = helicoidal_sheet_values(3);
  CHECK(odd.sector_m1[2] == HeightExpr::value(Rational(4), -1));
  CHECK(odd.axis_reflected[2] == HeightExpr::value(Rational(0), 1));
}

TEST_CASE("schwarz reflection across the sides of the Scherk piece") {
  const GraphSolution piece = scherk_piece(1.0);
  const Placement r0 = schwarz_reflect_horizontal(piece, 0, 1.0);
  const Placement r2 = schwarz_reflect_horizontal(piece, 2, 1.0);
  const auto& d = *piece.domain;
  for (double s : {0.2, 0.5}) {
    const cplx on2 = d.edge_geodesic(2).point_at(s);
    CHECK(r0.iso.apply_height(1.0) == doctest::Approx(-1.0));
    CHECK(std::abs(hyp_distance(r0.iso.apply_disk(on2), 0.0) - hyp_distance(on2, 0.0)) < 1e-12);
    const cplx on0 = d.edge_geodesic(0).point_at(s);
    CHECK(std::abs(r0.iso.apply_disk(on0) - on0) < 1e-10);
    CHECK(r2.iso.apply_height(0.0) == doctest::Approx(2.0));
  }
  CHECK(compose(r0.iso, r0.iso).approx_equal(IsometryH2xR::identity(), 1e-12));
  CHECK_THROWS(schwarz_reflect_horizontal(piece, 1, 1.0));
}

TEST_CASE("orbit of the screw motion") {
  const int n = 2;
  const double h = 1.0;
  GraphSolution piece = scherk_piece(h);
  const std::vector<Generator> gens{{"S", compose(vertical_translation(2, h), rotation_about_origin(pi / n))},
                                    {"S'", compose(vertical_translation(2, h), rotation_about_origin(pi / n)).inverse()}};
  const SurfaceComplex c = orbit(make_complex("test", std::move(piece), gens), 2 * n);
  CHECK(c.placements.size() == static_cast<std::size_t>(4 * n + 1));
  std::set<Rational> shifts;
  for (const auto& p : c.placements) {
    const Rational j = p.iso.vertical().shift / 2;
    shifts.insert(p.iso.vertical().shift);
    CHECK(p.iso.approx_equal(power(gens[0].iso, static_cast<int>(j.convert_to<double>())), 1e-10));
  }
  for (int j = -2 * n; j <= 2 * n; ++j) CHECK(shifts.count(Rational(2 * j)) == 1);
}

TEST_CASE("assembled families carry their generators") {
  AssemblyOptions o;
  o.grading.ell = 0.2;
  o.word_length = 3;
  FamilyParams p;
  p.h = 1.0;
  const Assembly a = assemble_family(p, o);
  CHECK(power(a.complex.generator("S").iso, 2 * p.n).approx_equal(a.complex.generator("T").iso, 1e-12));
  CHECK(a.sweep.solutions.size() == 3);
  FamilyParams q;
  q.family = "axis-at-infinity-scherk";
  q.h = 1.0;
  const Assembly b = assemble_family(q, o);
  for (const auto& pl : b.complex.placements)
    CHECK(std::abs(pl.iso.apply_disk(cplx(-1.0, 0.0)) - cplx(-1.0, 0.0)) < 1e-10);
  FamilyParams bad;
  bad.h = 0.0;
  CHECK_THROWS(family_domain(bad));
}

TEST_CASE("obj export groups one copy per placement") {
  AssemblyOptions o;
  o.grading.ell = 0.3;
  o.word_length = 1;
  FamilyParams p;
  p.h = 1.0;
  const Assembly a = assemble_family(p, o);
  std::ostringstream os;
  write_obj(os, a.complex);
  const std::string s = os.str();
  std::size_t groups = 0, verts = 0;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) {
    groups += line.rfind("g ", 0) == 0;
    verts += line.rfind("v ", 0) == 0;
  }
  CHECK(groups == a.complex.placements.size());
  CHECK(verts == a.complex.placements.size() * a.mesh.vertex_count());
}
