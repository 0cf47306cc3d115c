#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "hsurf/jenkins_serrin.hpp"
#include "hsurf/keyvalue.hpp"
#include "hsurf/mesher.hpp"

namespace hsurf::cli {

namespace fs = std::filesystem;

namespace {

Rational exact(double x) { return parse_rational(format_double(x)); }

bool has_arc(const PolygonDomain& d) {
  for (const auto& e : d.edges())
    if (e.kind == DomainEdge::Kind::IdealArc) return true;
  return false;
}

std::optional<int> plus_infinity_edge(const PolygonDomain& d) {
  for (std::size_t e = 0; e < d.size(); ++e)
    if (d.edges()[e].data.kind() == EdgeData::Kind::PlusInfinity) return static_cast<int>(e);
  return std::nullopt;
}

// Arc data agrees with the finite data of both neighbouring sides at the
// shared ideal vertices.
bool arc_continuous(const PolygonDomain& d, std::size_t e) {
  const std::size_t k = d.size();
  const auto& prev = d.edges()[(e + k - 1) % k].data;
  const auto& next = d.edges()[(e + 1) % k].data;
  const auto& arc = d.edges()[e].data;
  if (prev.is_infinite() || next.is_infinite()) return false;
  const double a0 = std::get<IdealPoint>(d.edge_start(e)).angle();
  const double a1 = std::get<IdealPoint>(d.edge_end(e)).angle();
  const auto [plo, phi] = prev.finite_range();
  const auto [nlo, nhi] = next.finite_range();
  if (plo != phi || nlo != nhi) return false;
  return std::abs(arc.value_at(a0, 0.0) - phi) < 1e-9 && std::abs(arc.value_at(a1, 0.0) - nlo) < 1e-9;
}

bool scherk_type(const std::string& f) { return f == "helicoidal-scherk" || f == "axis-at-infinity-scherk"; }
bool helicoidal_type(const std::string& f) { return f == "helicoidal" || f == "axis-at-infinity-helicoidal"; }

CurvatureReport curvature_study(const RunConfig& c, const Assembly& a) {
  if (!has_arc(a.domain)) {
    std::vector<double> levels;
    for (const auto& r : a.sweep.report) levels.push_back(r.truncation);
    return total_curvature(a.sweep.solutions, levels);
  }
  std::vector<GraphSolution> pieces;
  for (double eps : c.analysis.arc_levels) {
    MeshGrading g = c.mesh;
    g.eps_arc = eps;
    pieces.push_back(solve(triangulate(a.domain, g), a.domain, c.truncations.back(), c.solver));
  }
  return total_curvature(pieces, c.analysis.arc_levels);
}

std::string piece_name(double truncation) { return "piece-M" + format_double(truncation) + ".sol"; }

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << text;
  if (!os) throw std::runtime_error("write failed: " + p.string());
}

template <class F>
std::string text_of(F&& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

std::string results_text(const RunResults& r) {
  const Assembly& a = r.assembly;
  std::ostringstream os;
  os << "[results]\n";
  os << "status = ok\n";
  os << "domain_vertices = " << a.domain.size() << "\n";
  os << "mesh_vertices = " << a.mesh.vertex_count() << "\n";
  os << "mesh_triangles = " << a.mesh.triangle_count() << "\n";
  os << "placements = " << a.complex.placements.size() << "\n";
  for (std::size_t i = 0; i < a.sweep.report.size(); ++i) {
    const auto& l = a.sweep.report[i];
    os << "level_" << i << "_truncation = " << format_double(l.truncation) << "\n";
    os << "level_" << i << "_residual = " << format_double(l.residual) << "\n";
    if (!std::isnan(l.probe_error)) os << "level_" << i << "_probe_change = " << format_double(l.probe_error) << "\n";
  }
  if (r.embedding) {
    os << "embedding = " << to_string(r.embedding->verdict) << "\n";
    if (!r.embedding->condition.empty()) os << "embedding_condition = " << r.embedding->condition << "\n";
  }
  if (r.nonperiodic) os << "embedding = " << to_string(*r.nonperiodic) << "\n";
  if (r.separation) {
    os << "separation_min_gap = " << format_double(r.separation->min_gap) << "\n";
    os << "separation_crossing = " << (r.separation->crossing ? "true" : "false") << "\n";
  }
  if (r.curvature) {
    os << "curvature_verdict = " << to_string(r.curvature->verdict) << "\n";
    double gb = 0.0;
    for (const auto& l : r.curvature->levels) gb = std::max(gb, l.gb_residual);
    os << "gauss_bonnet_residual_max = " << format_double(gb) << "\n";
  }
  if (r.accumulation) {
    os << "accumulation_edge = " << *r.accumulation_edge << "\n";
    os << "accumulation = " << (r.accumulation->accumulates ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace

RunResults run_pipeline(const RunConfig& c) {
  const FamilyParams p = family_params(c);
  RunResults r{assemble_family(p, assembly_options(c)), {}, {}, {}, {}, {}, {}};
  const Assembly& a = r.assembly;
  if (c.analysis.embedding) {
    if (c.family == "helicoidal-scherk") {
      r.embedding = symbolic_embedding_check(p, std::nullopt);
    } else if (c.family == "helicoidal") {
      const auto [lo, hi] = p.f->finite_range();
      const Rational h = exact(c.h);
      r.embedding = symbolic_embedding_check(p, std::pair{exact(lo) / h, exact(hi) / h});
    } else if (c.family == "non-periodic") {
      r.nonperiodic = nonperiodic_embedding_flag(c.theta, *p.f);
    }
  }
  if (c.analysis.separation)
    r.separation = numeric_sheet_separation(a.complex, c.analysis.separation_samples, c.analysis.separation_margin);
  if (c.analysis.curvature) r.curvature = curvature_study(c, a);
  if (c.analysis.accumulation) {
    if (const auto e = plus_infinity_edge(a.domain)) {
      r.accumulation_edge = *e;
      r.accumulation = accumulation_diagnostic(a.complex, a.domain.edge_geodesic(*e), c.analysis.accumulation_eps,
                                               c.analysis.accumulation_heights);
    }
  }
  return r;
}

std::vector<std::string> write_artifacts(const RunConfig& c, const RunResults& r) {
  const fs::path dir(c.output_dir);
  fs::create_directories(dir);
  const Assembly& a = r.assembly;
  std::vector<std::string> files;
  auto put = [&](const std::string& name, const std::string& text) {
    write_file(dir / name, text);
    files.push_back(name);
  };
  put("domain.txt", serialize(a.domain));
  for (const auto& s : a.sweep.solutions) put(piece_name(s.truncation), serialize(s));
  put("surface.obj", text_of([&](std::ostream& os) { write_obj(os, a.complex); }));
  put("levels.csv", text_of([&](std::ostream& os) { write_level_csv(os, a.sweep.report); }));
  if (r.separation) put("separation.csv", text_of([&](std::ostream& os) { write_separation_csv(os, *r.separation); }));
  if (r.curvature) put("curvature.csv", text_of([&](std::ostream& os) { write_curvature_csv(os, *r.curvature); }));
  if (r.accumulation)
    put("accumulation.csv",
        text_of([&](std::ostream& os) { write_accumulation_csv(os, *r.accumulation, a.complex); }));
  put("manifest.txt", config_text(c) + results_text(r));
  return files;
}

namespace {

// Runs the pipeline, keeping a manifest with the failure status when the
// solver gives up.
std::optional<RunResults> build(const RunConfig& c, std::ostream& err, int& code) {
  try {
    RunResults r = run_pipeline(c);
    write_artifacts(c, r);
    code = kOk;
    return r;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    fs::create_directories(c.output_dir);
    try {
      write_file(fs::path(c.output_dir) / "domain.txt", serialize(family_domain(family_params(c))));
    } catch (const std::exception&) {
    }
    write_file(fs::path(c.output_dir) / "manifest.txt",
               config_text(c) + "[results]\nstatus = solver-failure\nmessage = " + std::string(e.what()) + "\n");
    code = kSolverFailure;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    code = kConfigError;
  } catch (const InvalidData& e) {
    err << "error: " << e.what() << "\n";
    code = kConfigError;
  }
  return std::nullopt;
}

}  // namespace

int cmd_build(const RunConfig& c, std::ostream& out, std::ostream& err) {
  int code = kOk;
  const auto r = build(c, err, code);
  if (!r) return code;
  const Assembly& a = r->assembly;
  out << "family " << c.family << ": " << a.mesh.vertex_count() << " vertices, " << a.mesh.triangle_count()
      << " triangles, " << a.complex.placements.size() << " placements\n";
  for (const auto& l : a.sweep.report)
    out << "  M = " << format_double(l.truncation) << "  residual " << format_double(l.residual) << "\n";
  out << "artifacts in " << c.output_dir << "\n";
  return kOk;
}

void cmd_families(std::ostream& out) {
  out << "helicoidal-scherk\n"
         "  parameters: n >= 1 (integer), h > 0, qs (optional ideal angles, increasing in (0, pi/2n))\n"
         "  piece: polygon 0, 1, qs..., e^{i pi/2n}; data 0, +inf, -inf, ... alternating, h\n"
         "  symmetries: screw motion S (rotation pi/n, shift 2h), translation T = S^2n\n"
         "  embedded for every n and h; complete, not proper (accumulates onto the plane over the +inf side)\n"
         "  boundary case: h = 0 is the Scherk graph (pseudo-Scherk graph with qs), flagged and not built\n"
         "helicoidal\n"
         "  parameters: m >= 1 (integer), h > 0, f finite data on the ideal arc from angle 0 to pi/m\n"
         "  piece: sector 0, 1, e^{i pi/m}; data 0, f, h\n"
         "  special case: f(e^{it}) = (hm/pi) t recovers a helicoid (f = linear <hm/pi>)\n"
         "  embedded for even m; for odd m and constant f exactly when (1-m)h <= 2f <= (1+m)h\n"
         "  boundary case: h = 0, flagged and not built\n"
         "axis-at-infinity-scherk\n"
         "  parameters: theta in (0, pi), h > 0, qs (optional ideal angles in (0, theta))\n"
         "  piece: ideal triangle 1, e^{i theta}, -1; data +inf (alternating with qs), h, 0\n"
         "  symmetries: parabolic screw motion P fixing -1; properly embedded\n"
         "  boundary case: h = 0, flagged and not built\n"
         "axis-at-infinity-helicoidal\n"
         "  parameters: theta in (0, pi), h > 0, f finite data on the ideal arc from angle 0 to theta\n"
         "  piece: 1, e^{i theta}, -1 with f on the arc, h, 0\n"
         "  special case: f(e^{it}) = (h/theta) t is the classical helicoidal example (f = linear <h/theta>)\n"
         "  boundary case: h = 0, flagged and not built\n"
         "non-periodic\n"
         "  parameters: theta in (0, pi), f finite data on the ideal arc from angle 0 to theta\n"
         "  piece: sector 0, 1, e^{i theta}; data +inf, f, 0\n"
         "  embedded when theta <= pi/2 or f > 0; the asymptotic boundary is continuous across the axis when "
         "f = 0 at e^{i theta}\n";
}

namespace {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  int code = kCriterionFailed;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void criteria(const RunConfig& c, const RunResults& r, std::vector<Check>& out) {
  const Assembly& a = r.assembly;
  const PolygonDomain& d = a.domain;
  const auto& sols = a.sweep.solutions;

  {
    double worst = 0.0;
    for (const auto& l : a.sweep.report) worst = std::max(worst, l.residual);
    out.push_back({"solver-residual", worst <= c.solver.tol, "max residual " + sci(worst) + " (tol " + sci(c.solver.tol) + ")"});
  }

  const FamilyParams p = family_params(c);
  if (c.family == "helicoidal") {
    const double a_exact = c.h * c.m / std::numbers::pi;
    const auto tok = split_ws(c.f);
    if (tok.size() >= 2 && tok[0] == "linear" && std::abs(parse_double(tok[1]) - a_exact) < 1e-12) {
      const GraphSolution& s = sols.back();
      const auto probes = probe_points(d, s.mesh);
      const auto v = sample_solution(s, probes);
      double err = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i) err = std::max(err, std::abs(v[i] - a_exact * std::arg(probes[i])));
      out.push_back({"helicoid-accuracy", err < 5e-3, "L-inf probe error " + sci(err) + " < 5e-3"});
    }
  }

  if (scherk_type(c.family) && sols.size() >= 2) {
    bool plus_only = true;
    for (const auto& e : d.edges()) plus_only &= e.data.kind() != EdgeData::Kind::MinusInfinity;
    if (plus_only) {
      double drop = 0.0;
      for (std::size_t k = 1; k < sols.size(); ++k)
        for (std::size_t v = 0; v < sols[k].u.size(); ++v) drop = std::max(drop, sols[k - 1].u[v] - sols[k].u[v]);
      bool decreasing = true;
      std::string diffs;
      for (std::size_t k = 1; k < a.sweep.report.size(); ++k) {
        diffs += (diffs.empty() ? "" : ", ") + sci(a.sweep.report[k].probe_error);
        if (k >= 2) decreasing &= a.sweep.report[k].probe_error < a.sweep.report[k - 1].probe_error;
      }
      out.push_back({"exhaustion-monotone", drop <= 1e-8 && decreasing,
                     "largest decrease " + sci(drop) + ", probe changes " + diffs});
    }
  }

  if (r.embedding) {
    const Verdict v = r.embedding->verdict;
    if (v == Verdict::Unknown)
      out.push_back({"embedding-symbolic", false, "not guaranteed: sheets are not ordered for this data", kUnknown});
    else
      out.push_back({"embedding-symbolic", true,
                     to_string(v) + (r.embedding->condition.empty() ? "" : " (" + r.embedding->condition + ")")});
  }
  if (r.nonperiodic)
    out.push_back({"embedding-symbolic", *r.nonperiodic == NonperiodicEmbedding::Guaranteed,
                   to_string(*r.nonperiodic), kUnknown});
  if (r.separation) {
    const auto& s = *r.separation;
    const std::string detail = s.pairs == 0 ? std::string("no sheet pairs to compare (one sheet per orbit)")
                                            : "min gap " + sci(s.min_gap) + " over " + std::to_string(s.pairs) +
                                                  " sheet pairs";
    if (s.crossing)
      out.push_back({"embedding-numeric", false, "crossing detected, " + detail, kConditionViolated});
    else
      out.push_back({"embedding-numeric", s.min_gap > 0.0, detail});
  }

  if (c.family == "helicoidal-scherk" || c.family == "helicoidal") {
    const int k = c.family == "helicoidal" ? c.m : 2 * c.n;
    const bool ok = power(a.complex.generator("S").iso, k).approx_equal(a.complex.generator("T").iso, 1e-12);
    out.push_back({"group-algebra", ok, "S^" + std::to_string(k) + " = T"});
  } else if (c.family == "axis-at-infinity-scherk" || c.family == "axis-at-infinity-helicoidal") {
    const IdealPoint p0(std::numbers::pi);
    const double dev = std::abs(std::remainder(a.complex.generator("P").iso.disk().apply(p0).angle() - p0.angle(),
                                               2.0 * std::numbers::pi));
    out.push_back({"group-algebra", dev < 1e-10, "P moves the fixed ideal point by " + sci(dev)});
  }

  if (r.curvature) {
    double worst = 0.0;
    for (const auto& l : r.curvature->levels) worst = std::max(worst, l.gb_residual);
    out.push_back({"gauss-bonnet", worst < 10.0 * c.mesh.ell,
                   "max residual " + sci(worst) + " < 10 ell = " + sci(10.0 * c.mesh.ell)});
    if (scherk_type(c.family))
      out.push_back({"total-curvature", r.curvature->verdict == CurvatureReport::Trend::Converging,
                     to_string(r.curvature->verdict) + " (expected converging)"});
    else if (helicoidal_type(c.family))
      out.push_back({"total-curvature", r.curvature->verdict == CurvatureReport::Trend::Diverging,
                     to_string(r.curvature->verdict) + " (expected diverging)"});
  }

  for (std::size_t e = 0; e < d.size(); ++e) {
    const DomainEdge& ed = d.edges()[e];
    if (ed.data.kind() == EdgeData::Kind::PlusInfinity && sols.size() >= 2) {
      std::vector<double> mx;
      for (const auto& s : sols) {
        double m = 0.0;
        for (const auto& q : normal_angle_profile(s, static_cast<int>(e))) m = std::max(m, q.angle);
        mx.push_back(m);
      }
      bool dec = true;
      std::string list;
      for (std::size_t k = 0; k < mx.size(); ++k) {
        list += (k ? ", " : "") + sci(mx[k]);
        if (k) dec &= mx[k] < mx[k - 1];
      }
      out.push_back({"normal-angle-edge-" + std::to_string(e), dec, "max angle per level " + list});
    } else if (helicoidal_type(c.family) && ed.kind == DomainEdge::Kind::IdealArc && !ed.data.is_infinite()) {
      double mn = INFINITY, at = 0.0;
      for (const auto& q : normal_angle_profile(sols.back(), static_cast<int>(e)))
        if (q.angle < mn) {
          mn = q.angle;
          at = q.param;
        }
      const std::string name = "normal-angle-arc-" + std::to_string(e);
      if (arc_continuous(d, e))
        out.push_back({name, mn > 0.1, "min angle " + sci(mn) + " > 0.1"});
      else
        out.push_back({name, true, "min angle " + sci(mn) + " at t = " + sci(at) +
                                       " (data jumps at an arc end; bound not enforced)"});
    }
  }

  if (r.accumulation) {
    if (c.family == "helicoidal-scherk")
      out.push_back({"accumulation", r.accumulation->accumulates,
                     std::to_string(r.accumulation->copies.size()) + " copies near the plane (expected accumulation)"});
    else if (c.family == "axis-at-infinity-scherk")
      out.push_back({"accumulation", !r.accumulation->accumulates, "expected no accumulation"});
  }

  if (d.has_infinite_data()) {
    const JSCertificate cert = jenkins_serrin_certify(d);
    out.push_back({"jenkins-serrin", cert.admissible, "margin " + sci(cert.margin)});
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  int code = kOk;
  const auto r = build(c, err, code);
  if (!r) return code;
  std::vector<Check> checks;
  criteria(c, *r, checks);

  // Rerun into a scratch directory and compare every artifact byte for byte.
  RunConfig again = c;
  again.output_dir = (fs::path(c.output_dir) / ".rerun").string();
  {
    const RunResults r2 = run_pipeline(again);
    const auto files = write_artifacts(again, r2);
    std::string diff;
    for (const auto& f : files) {
      std::string a = slurp(fs::path(c.output_dir) / f), b = slurp(fs::path(again.output_dir) / f);
      if (f == "manifest.txt") {
        // the output directory is part of the manifest
        a.erase(a.find("dir = " + c.output_dir + "\n"), c.output_dir.size() + 7);
        b.erase(b.find("dir = " + again.output_dir + "\n"), again.output_dir.size() + 7);
      }
      if (a != b) diff += (diff.empty() ? "" : ", ") + f;
    }
    fs::remove_all(again.output_dir);
    checks.push_back({"determinism", diff.empty(), diff.empty() ? std::to_string(files.size()) + " artifacts identical" : "differs: " + diff});
  }

  bool violated = false, unknown = false, failed = false;
  for (const auto& ch : checks) {
    out << (ch.pass ? "PASS " : "FAIL ") << ch.name << ": " << ch.detail << "\n";
    if (ch.pass) continue;
    violated |= ch.code == kConditionViolated;
    unknown |= ch.code == kUnknown;
    failed |= ch.code == kCriterionFailed;
  }
  const int result = violated ? kConditionViolated : unknown ? kUnknown : failed ? kCriterionFailed : kOk;
  out << "verify: " << (result == kOk ? "pass" : "fail") << " (exit " << result << ")\n";
  return result;
}

int cmd_export(const RunConfig& c, const std::string& what, const std::string& path, std::ostream& out,
               std::ostream& err) {
  static const std::vector<std::string> kinds{"obj", "domain", "solution", "levels", "curvature",
                                              "separation", "accumulation", "manifest"};
  if (std::find(kinds.begin(), kinds.end(), what) == kinds.end()) {
    err << "error: unknown export kind '" << what << "'\n";
    return kConfigError;
  }
  RunConfig cc = c;
  cc.analysis.curvature = what == "curvature" || what == "manifest";
  cc.analysis.separation = what == "separation" || what == "manifest";
  cc.analysis.accumulation = what == "accumulation" || what == "manifest";
  cc.analysis.embedding = what == "manifest";
  if (what == "manifest") cc = c;
  std::optional<RunResults> res;
  try {
    res = run_pipeline(cc);
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  const RunResults& r = *res;
  std::string text;
  if (what == "obj") text = text_of([&](std::ostream& os) { write_obj(os, r.assembly.complex); });
  if (what == "domain") text = serialize(r.assembly.domain);
  if (what == "solution") text = serialize(*r.assembly.complex.piece);
  if (what == "levels") text = text_of([&](std::ostream& os) { write_level_csv(os, r.assembly.sweep.report); });
  if (what == "curvature") text = text_of([&](std::ostream& os) { write_curvature_csv(os, *r.curvature); });
  if (what == "separation") text = text_of([&](std::ostream& os) { write_separation_csv(os, *r.separation); });
  if (what == "accumulation") {
    if (!r.accumulation) {
      err << "error: family " << c.family << " has no +inf side to test for accumulation\n";
      return kConfigError;
    }
    text = text_of([&](std::ostream& os) { write_accumulation_csv(os, *r.accumulation, r.assembly.complex); });
  }
  if (what == "manifest") text = config_text(c) + results_text(r);
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
  return kOk;
}

}  // namespace hsurf::cli
