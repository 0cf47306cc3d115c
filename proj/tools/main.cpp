#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "hsurf/keyvalue.hpp"

using namespace hsurf;
using namespace hsurf::cli;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config, "run configuration file (defaults apply when omitted)");
  cmd->add_option("--set", c.overrides, "override a key: section.key=value")->expected(1)->take_all();
  cmd->add_option("--out", c.out, "output directory (overrides output.dir)");
}

RunConfig load(const Common& c) {
  RunConfig cfg;
  if (!c.config.empty()) {
    std::ifstream is(c.config, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + c.config);
    std::ostringstream ss;
    ss << is.rdbuf();
    cfg = parse_run_config(ss.str());
  }
  for (const auto& o : c.overrides) apply_override(cfg, o);
  if (!c.out.empty()) cfg.output_dir = c.out;
  validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal surfaces in H2 x R from Jenkins-Serrin pieces"};
  app.require_subcommand(1);
  Common build_opt, verify_opt, export_opt;
  std::string what = "obj", path;

  auto* build = app.add_subcommand("build", "solve, assemble and analyze; write artifacts");
  add_common(build, build_opt);
  auto* families = app.add_subcommand("families", "list the surface families");
  auto* verify = app.add_subcommand("verify", "build and check the family's criteria");
  add_common(verify, verify_opt);
  auto* exp = app.add_subcommand("export", "write one artifact to a file or stdout");
  add_common(exp, export_opt);
  exp->add_option("--what", what, "obj, domain, solution, levels, curvature, separation, accumulation, manifest");
  exp->add_option("-o,--output", path, "destination file ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*families) {
      cmd_families(std::cout);
      return kOk;
    }
    if (*build) return cmd_build(load(build_opt), std::cout, std::cerr);
    if (*verify) return cmd_verify(load(verify_opt), std::cout, std::cerr);
    if (*exp) return cmd_export(load(export_opt), what, path, std::cout, std::cerr);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}
