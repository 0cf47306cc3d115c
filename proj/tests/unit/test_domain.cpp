#include <doctest.h>

#include "hsurf/domain.hpp"
#include "hsurf/jenkins_serrin.hpp"
#include "hsurf/keyvalue.hpp"

using namespace hsurf;
using std::numbers::pi;

TEST_CASE("scherk triangle") {
  const PolygonDomain d = scherk_triangle(2, 1.0);
  REQUIRE(d.size() == 3);
  CHECK(std::get<IdealPoint>(d.vertices()[2]).angle() == doctest::Approx(pi / 4));
  CHECK(d.edges()[0].data == EdgeData::constant(0.0));
  CHECK(d.edges()[1].data == EdgeData::plus_infinity());
  CHECK(d.edges()[2].data == EdgeData::constant(1.0));
  CHECK(d.edge_geodesic(0).kind == Geodesic::Kind::Diameter);
  CHECK(d.edge_geodesic(2).kind == Geodesic::Kind::Diameter);
  CHECK(std::get<IdealPoint>(scherk_triangle(1, 1.0).vertices()[2]).angle() == doctest::Approx(pi / 2));
}

TEST_CASE("generalized polygon") {
  const PolygonDomain d = generalized_scherk_polygon(2, 1.0, {pi / 8});
  REQUIRE(d.size() == 4);
  CHECK(d.edges()[1].data == EdgeData::plus_infinity());
  CHECK(d.edges()[2].data == EdgeData::minus_infinity());
  CHECK(generalized_scherk_polygon(2, 1.0, {}) == scherk_triangle(2, 1.0));
  CHECK_THROWS(generalized_scherk_polygon(2, 1.0, {pi / 2}));
}

TEST_CASE("helicoidal sectors and boundary data") {
  const double h = 0.5;
  const EdgeData f = linear_boundary_function(h * 4 / pi, pi / 4, 64);
  const PolygonDomain d = helicoidal_sector(4, h, f);
  CHECK(d.edges()[1].kind == DomainEdge::Kind::IdealArc);
  CHECK(f.value_at(pi / 8, 0.0) == doctest::Approx(h / 2));
  const PolygonDomain half = helicoidal_sector(1, 1.0, EdgeData::constant(0.5));
  CHECK(std::get<IdealPoint>(half.vertices()[2]).angle() == doctest::Approx(pi));

  const EdgeData jump = EdgeData::sampled({{0.0, 0.0}, {0.3, 0.0}, {0.3, 1.0}, {pi / 4, 1.0}});
  CHECK(jump.jump_angles().size() == 1);
  CHECK(jump.value_at(0.3, 0.0) == doctest::Approx(0.5));
  CHECK_NOTHROW(helicoidal_sector(4, h, jump));
  CHECK_THROWS_AS(EdgeData::sampled({{0.0, 0.0}, {0.3, 0.0}, {0.3, 1.0}, {0.3, 2.0}}), InvalidData);
}

TEST_CASE("axis at infinity and non-periodic domains") {
  const PolygonDomain a = axis_at_infinity_domain(pi / 2, 1.0, AxisScherkVariant{});
  CHECK(a.edges()[0].data == EdgeData::plus_infinity());
  const PolygonDomain b = axis_at_infinity_domain(pi / 3, 1.0, AxisHelicoidalVariant{linear_boundary_function(3 / pi, pi / 3)});
  CHECK(b.edges()[0].kind == DomainEdge::Kind::IdealArc);
  CHECK_THROWS(axis_at_infinity_domain(pi, 1.0, AxisScherkVariant{}));
  const PolygonDomain c = nonperiodic_domain(2 * pi / 3, EdgeData::constant(1.0));
  CHECK(c.edges()[0].data == EdgeData::plus_infinity());
}

TEST_CASE("domain text round trip") {
  for (const PolygonDomain& d :
       {scherk_triangle(3, 0.7), generalized_scherk_polygon(2, 1.0, {0.2}),
        helicoidal_sector(4, 0.5, linear_boundary_function(2 / pi, pi / 4, 17)),
        axis_at_infinity_domain(1.1, 0.3, AxisScherkVariant{})}) {
    const std::string text = serialize(d);
    CHECK(parse_domain(text) == d);
    CHECK(serialize(parse_domain(text)) == text);
  }
  CHECK(to_string(EdgeData::constant(2.5)) == "constant 2.5");
  CHECK(parse_edge_data("minus-infinity") == EdgeData::minus_infinity());
  CHECK_THROWS_AS(parse_edge_data("seven"), ParseError);
}

TEST_CASE("key-value grammar") {
  const auto e = parse_key_value("# c\n[a]\nx = 1\ny = two words\n[b]\nx = 3\n");
  REQUIRE(e.size() == 3);
  CHECK(e[1].value == "two words");
  CHECK(e[2].section == "b");
  CHECK(e[2].line == 6);
  CHECK_THROWS_AS(parse_key_value("[a]\nx = 1\nx = 2\n"), ParseError);
  CHECK(format_double(0.1) == "0.1");
  CHECK(parse_double(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS_AS(parse_double("1.5x"), ParseError);
}

TEST_CASE("jenkins-serrin admissibility") {
  const auto c = jenkins_serrin_check(scherk_triangle(2, 1.0), 0.05);
  CHECK(c.admissible);
  CHECK(c.margin > 0.0);
  for (double q : {pi / 16, pi / 8, 3 * pi / 16})
    CHECK(jenkins_serrin_certify(generalized_scherk_polygon(2, 1.0, {q})).admissible);
  // only infinite data: the whole domain is the equality case, reported with
  // its defect alpha - beta
  const PolygonDomain eq("eq", {IdealPoint(0.0), IdealPoint(2.0), IdealPoint(4.0)},
                         {{DomainEdge::Kind::GeodesicSide, EdgeData::plus_infinity()},
                          {DomainEdge::Kind::GeodesicSide, EdgeData::minus_infinity()},
                          {DomainEdge::Kind::GeodesicSide, EdgeData::plus_infinity()}});
  const auto e = jenkins_serrin_check(eq, 0.05);
  CHECK(e.equality_case);
  const double len01 = truncated_length(eq, 0, 1, 0.05), len12 = truncated_length(eq, 1, 2, 0.05),
               len20 = truncated_length(eq, 2, 0, 0.05);
  CHECK(e.equality_defect == doctest::Approx(len01 + len20 - len12).epsilon(1e-9));
  // truncated length between two ideal points grows as the horocycles shrink
  const auto d = scherk_triangle(2, 1.0);
  CHECK(truncated_length(d, 1, 2, 0.025) > truncated_length(d, 1, 2, 0.05));
}
