#include <doctest.h>

#include <sstream>

#include "commands.hpp"
#include "hsurf/keyvalue.hpp"
#include "run_config.hpp"

using namespace hsurf;
using namespace hsurf::cli;

TEST_CASE("config text round trip") {
  RunConfig c;
  c.family = "helicoidal";
  c.m = 3;
  c.h = 1.25;
  c.f = "constant 0.5";
  c.truncations = {2, 4};
  c.analysis.arc_levels = {0.2, 0.1};
  const std::string text = config_text(c);
  const RunConfig back = parse_run_config(text);
  CHECK(config_text(back) == text);
  CHECK(back.family == "helicoidal");
  CHECK(back.f == "constant 0.5");
  CHECK(back.truncations == std::vector<double>{2, 4});
  CHECK(config_text(RunConfig{}) == config_text(parse_run_config(config_text(RunConfig{}))));
}

TEST_CASE("every set field appears in the config text") {
  RunConfig c;
  c.f = "constant 1";
  c.qs = {0.2};
  const std::string text = config_text(c);
  for (const auto& f : config_fields()) {
    const std::string key = f.substr(f.find('.') + 1);
    CHECK(text.find("\n" + key + " = ") != std::string::npos);
  }
}

TEST_CASE("validation names the field and line") {
  try {
    parse_run_config("[family]\nname = helicoidal-scherk\nn = 0\n");
    FAIL("accepted n = 0");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "family.n");
    CHECK(e.line() == 3);
  }
  try {
    parse_run_config("[family]\nname = axis-at-infinity-scherk\ntheta = 4\n");
    FAIL("accepted theta = 4");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "family.theta");
    CHECK(std::string(e.what()).find("line 3") == 0);
  }
  CHECK_THROWS_AS(parse_run_config("[mesh]\nell = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("[family]\nh = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("[family]\nname = helicoidal\n"), ConfigError);
}

TEST_CASE("unknown keys and malformed values are parse errors") {
  try {
    parse_run_config("[mesh]\nell = 0.1\nsize = 3\n");
    FAIL("accepted an unknown key");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_run_config("[mesh]\nell = fast\n"), ParseError);
  CHECK_THROWS_AS(parse_run_config("[nowhere]\nx = 1\n"), ParseError);
  CHECK_NOTHROW(parse_run_config("[results]\nanything = 1\n"));
}

TEST_CASE("overrides") {
  RunConfig c;
  apply_override(c, "mesh.ell=0.2");
  apply_override(c, "family.name = helicoidal");
  CHECK(c.mesh.ell == 0.2);
  CHECK(c.family == "helicoidal");
  CHECK_THROWS(apply_override(c, "mesh.ell"));
  CHECK_THROWS(apply_override(c, "mesh.nothing=1"));
}

TEST_CASE("linear boundary functions span the ideal arc") {
  RunConfig c;
  c.family = "helicoidal";
  c.m = 4;
  c.h = 0.5;
  c.f = "linear 0.6366197723675814 16";
  const FamilyParams p = family_params(c);
  REQUIRE(p.f);
  CHECK(p.f->samples().size() == 16);
  CHECK(p.f->samples().back().angle == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("families listing names every family") {
  std::ostringstream os;
  cmd_families(os);
  for (const auto& f : kFamilies) CHECK(os.str().find(f + "\n") != std::string::npos);
}
