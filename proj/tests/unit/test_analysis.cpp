#include <doctest.h>

#include "hsurf/analysis.hpp"
#include "hsurf/mesher.hpp"

using namespace hsurf;
using std::numbers::pi;

TEST_CASE("symbolic embeddedness for helicoidal families") {
  FamilyParams p;
  p.family = "helicoidal";
  p.h = 1.0;
  for (int m : {2, 4, 6}) {
    p.m = m;
    CHECK(symbolic_embedding_check(p, std::nullopt).verdict == Verdict::Embedded);
  }
  p.m = 3;
  const auto r = symbolic_embedding_check(p, std::nullopt);
  CHECK(r.verdict == Verdict::EmbeddedIff);
  REQUIRE(r.f_interval);
  CHECK(r.f_interval->first == Rational(-1));
  CHECK(r.f_interval->second == Rational(2));
  CHECK(symbolic_embedding_check(p, std::make_pair(Rational(5, 2), Rational(5, 2))).verdict == Verdict::Unknown);
  FamilyParams s;
  CHECK(symbolic_embedding_check(s, std::nullopt).verdict == Verdict::Embedded);
}

TEST_CASE("non-periodic embedding flag") {
  CHECK(nonperiodic_embedding_flag(pi / 2, EdgeData::constant(-1.0)) == NonperiodicEmbedding::Guaranteed);
  CHECK(nonperiodic_embedding_flag(2 * pi / 3, EdgeData::constant(1.0)) == NonperiodicEmbedding::Guaranteed);
  CHECK(nonperiodic_embedding_flag(2 * pi / 3, EdgeData::constant(-0.5)) == NonperiodicEmbedding::NotGuaranteed);
}

TEST_CASE("lifted edge length") {
  CHECK(lifted_edge_length(0.0, 0.0, 0.0, 2.0) == doctest::Approx(2.0));
  CHECK(lifted_edge_length(0.0, 0.0, 0.5, 0.0) == doctest::Approx(hyp_distance(cplx(0, 0), cplx(0.5, 0))).epsilon(1e-3));
}

TEST_CASE("Gauss-Bonnet residual of a flat piece shrinks under refinement") {
  const PolygonDomain flat("flat", {DiskPoint(0.0, 0.0), DiskPoint(0.5, 0.0), DiskPoint(0.0, 0.5)},
                           {{DomainEdge::Kind::GeodesicSide, EdgeData::constant(0.0)},
                            {DomainEdge::Kind::GeodesicSide, EdgeData::constant(0.0)},
                            {DomainEdge::Kind::GeodesicSide, EdgeData::constant(0.0)}});
  std::vector<double> residual;
  for (double ell : {0.1, 0.05}) {
    MeshGrading g;
    g.ell = ell;
    const CurvatureLevel c = piece_curvature(solve(triangulate(flat, g), flat, 0.0), 0.0);
    // a horizontal slice of H^2: total curvature is minus its area
    CHECK(c.total_curvature < 0.0);
    CHECK(c.gb_residual < 10.0 * ell);
    residual.push_back(c.gb_residual);
  }
  CHECK(residual[1] < residual[0]);
}

TEST_CASE("separation of two ordered graphs") {
  const auto d = scherk_triangle(2, 1.0);
  MeshGrading g;
  g.ell = 0.2;
  const Mesh m = triangulate(d, g);
  const GraphSolution a = solve(m, d, 4.0), b = solve(m, d, 8.0);
  const SeparationReport r = graph_separation(a, b);
  CHECK_FALSE(r.crossing);
  CHECK(r.min_gap >= -1e-8);
}

TEST_CASE("accumulation diagnostic") {
  AssemblyOptions o;
  o.grading.ell = 0.1;
  FamilyParams p;
  p.h = 1.0;
  const Assembly a = assemble_family(p, o);
  const auto acc = accumulation_diagnostic(a.complex, a.domain.edge_geodesic(1), 0.1, {8.0});
  CHECK(acc.accumulates);
  CHECK_FALSE(acc.copies.empty());
}
