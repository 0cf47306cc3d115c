// Acceptance suite: one PASS/FAIL line per criterion. Expected values come
// from closed forms, 1-D quadrature or exact rational enumeration computed
// here, never from the library under test.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "hsurf/analysis.hpp"
#include "hsurf/jenkins_serrin.hpp"
#include "hsurf/mesher.hpp"
#include "run_config.hpp"

using namespace hsurf;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_gb(const CurvatureReport& r) {
  double g = 0.0;
  for (const auto& l : r.levels) g = std::max(g, l.gb_residual);
  return g;
}

// 1. u = (hm/pi) arg z on the sector with m = 4, h = 1/2.
Outcome helicoid_oracle() {
  const int m = 4;
  const double h = 0.5, a = h * m / pi;
  const auto d = helicoidal_sector(m, h, linear_boundary_function(a, pi / m));
  RefineOptions o;
  o.grading.ell = 0.05;
  o.grading.eps_arc = 0.05;
  o.target = 0.0;
  o.max_levels = 3;
  o.min_levels = 3;
  o.exact = [a](cplx z) { return a * std::arg(z); };
  const auto t0 = std::chrono::steady_clock::now();
  RefineResult r;
  try {
    r = refine_until(d, o);
  } catch (const RefinementBudgetExhausted& e) {
    r = e.partial();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.errors.size() < 3 || r.orders.size() < 2) return {false, "fewer than three levels solved"};
  const double order = std::min(r.orders[0], r.orders[1]);
  const bool ok = r.errors[0] < 5e-3 && order >= 1.0 && secs < 120.0;
  return {ok, fmt("errors %.2e %.2e %.2e, orders %.2f %.2f, %.1f s", r.errors[0], r.errors[1], r.errors[2],
                  r.orders[0], r.orders[1], secs)};
}

// 2. Rotational graphs: r lambda u' / sqrt(lambda^2 + u'^2) = c, i.e.
// du/drho = c / sqrt(sinh^2 rho - c^2) in the hyperbolic radius rho.
Outcome radial_ode() {
  using boost::math::quadrature::gauss_kronrod;
  const double r1 = 0.3, r2 = 0.8, u2 = 0.4;
  auto rho = [](double r) { return 2.0 * std::atanh(r); };
  const double rho1 = rho(r1);
  auto profile = [&](double c, double rr) {
    return gauss_kronrod<double, 61>::integrate(
        [c](double s) { return c / std::sqrt(std::sinh(s) * std::sinh(s) - c * c); }, rho1, rr, 15, 1e-12);
  };
  const double cmax = std::sinh(rho1);
  auto f = [&](double c) { return profile(c, rho(r2)) - u2; };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.0, 0.999 * cmax, tol, iters);
  const double c = 0.5 * (lo + hi);

  const Mesh mesh = annulus_mesh(r1, r2, 0.05);
  std::vector<double> data(mesh.vertex_count(), 0.0);
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.tags[v].kind == BoundaryTag::Kind::Edge && mesh.tags[v].index == 1) data[v] = u2;
  const GraphSolution s = solve_dirichlet(mesh, data);
  double err = 0.0;
  for (int v : mesh.interior_vertices())
    err = std::max(err, std::abs(s.u[v] - profile(c, rho(std::abs(mesh.vertices[v])))));
  return {err < 1e-3, fmt("c = %.10f, L-inf error %.2e over %zu interior vertices", c, err,
                          mesh.interior_vertices().size())};
}

// 3. Random finite data: exact maximum principle and ordering.
Outcome comparison_principle() {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_excess = -INFINITY, worst_order = 0.0;
  int bad_max = 0, bad_order = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(unit(rng) * 5);
    const double h = 0.2 + 2.0 * unit(rng);
    const auto d = helicoidal_sector(m, h, EdgeData::constant(-1.0 + 3.0 * unit(rng)));
    MeshGrading g;
    g.ell = 0.15 + 0.1 * unit(rng);
    g.eps_arc = 0.1;
    const Mesh mesh = triangulate(d, g);
    const double k1 = 4.0 * unit(rng) - 2.0, k2 = 6.0 * unit(rng), ph = kTwoPi * unit(rng);
    std::vector<double> lo(mesh.vertex_count(), 0.0), hi(mesh.vertex_count(), 0.0);
    for (int v : mesh.boundary_vertices()) {
      const cplx z = mesh.vertices[v];
      lo[v] = k1 * z.real() + std::sin(k2 * std::arg(z) + ph) + 0.5 * (unit(rng) - 0.5);
      hi[v] = lo[v] + 0.3 * unit(rng);
    }
    const GraphSolution a = solve_dirichlet(mesh, lo), b = solve_dirichlet(mesh, hi);
    double bmin = INFINITY, bmax = -INFINITY;
    for (int v : mesh.boundary_vertices()) {
      bmin = std::min(bmin, lo[v]);
      bmax = std::max(bmax, lo[v]);
    }
    bool in = true;
    for (int v : mesh.interior_vertices()) {
      in &= a.u[v] >= bmin && a.u[v] <= bmax;
      worst_excess = std::max({worst_excess, a.u[v] - bmax, bmin - a.u[v]});
      worst_order = std::max(worst_order, a.u[v] - b.u[v]);
      if (a.u[v] > b.u[v] + 1e-8) ++bad_order;
    }
    if (!in) ++bad_max;
  }
  return {bad_max == 0 && bad_order == 0,
          fmt("max principle violated in %d/50, ordering violated at %d vertices, max(u_lo - u_hi) %.2e, "
              "closest approach to the data bounds %.2e",
              bad_max, bad_order, worst_order, worst_excess)};
}

// 4. Monotone exhaustion on the Scherk triangle.
Outcome exhaustion_monotone() {
  const auto d = scherk_triangle(2, 1.0);
  MeshGrading g;
  g.ell = 0.1;
  const Mesh mesh = triangulate(d, g);
  const auto sw = truncation_sweep(d, mesh, {4.0, 8.0, 16.0});
  double drop = 0.0;
  for (std::size_t k = 1; k < sw.solutions.size(); ++k)
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
      drop = std::max(drop, sw.solutions[k - 1].u[v] - sw.solutions[k].u[v]);
  const double d1 = sw.report[1].probe_error, d2 = sw.report[2].probe_error;
  return {drop <= 1e-8 && d2 < d1,
          fmt("largest pointwise decrease %.2e, probe differences %.3e > %.3e", drop, d1, d2)};
}

// 5. Sheets over sector 2n+1 against the translates (2nhj, 2nhj + h, +inf).
Outcome sheet_arithmetic() {
  std::string detail;
  bool ok = true;
  for (int n = 1; n <= 4; ++n) {
    const int K = 2;
    const SheetStack st = sheet_stack(n, 1.0, 2 * n + 1, K);
    std::set<std::pair<Rational, Rational>> got;
    bool outer_inf = true;
    for (const auto& s : st.sheets) {
      outer_inf &= s.values[2] == HeightExpr::plus_infinity();
      got.insert({s.values[0].c_h(), s.values[1].c_h()});
    }
    // reflected sheets give 2n + 4kn, axis-reflected ones 4kn, k in [-K, K]
    std::set<std::pair<Rational, Rational>> expect;
    for (int k = -K; k <= K; ++k)
      for (int base : {0, 2 * n}) expect.insert({Rational(base + 4 * k * n), Rational(base + 4 * k * n + 1)});
    bool periodic = true;
    for (const auto& [a, b] : got) {
      const std::pair<Rational, Rational> up{a + 2 * n, b + 2 * n};
      if (up.first <= Rational(2 * n + 4 * K * n)) periodic &= got.count(up) == 1;
    }
    const bool match = got == expect && st.sheets.size() == expect.size() && outer_inf;
    ok &= match && periodic;
    detail += fmt("%sn=%d %zu sheets %s%s", detail.empty() ? "" : ", ", n, st.sheets.size(),
                  match ? "match" : "MISMATCH", periodic ? "" : " NOT-PERIODIC");
  }
  return {ok, detail};
}

// 6. Embeddedness: symbolic rule, numeric separation, a forced crossing.
Outcome embeddedness() {
  bool ok = true;
  int configs = 0;
  std::string bad;
  for (int m : {2, 3, 4, 5, 6, 7}) {
    FamilyParams p;
    p.family = "helicoidal";
    p.m = m;
    p.h = 1.0;
    for (int num = -10; num <= 10; ++num) {
      const Rational r(num, 2);  // f / h
      const auto rep = symbolic_embedding_check(p, std::make_pair(r, r));
      const bool embedded = rep.verdict != Verdict::Unknown;
      const bool expect = m % 2 == 0 || (Rational(1 - m) <= 2 * r && 2 * r <= Rational(1 + m));
      ++configs;
      if (embedded != expect) {
        ok = false;
        bad += fmt(" m=%d f/h=%s", m, to_string(r).c_str());
      }
    }
  }

  AssemblyOptions o;
  o.grading.ell = 0.1;
  double min_gap = INFINITY;
  int numeric = 0;
  auto separate = [&](const FamilyParams& p) {
    const Assembly a = assemble_family(p, o);
    return numeric_sheet_separation(a.complex);
  };
  for (int n = 1; n <= 4; ++n)
    for (double h : {0.5, 1.0}) {
      FamilyParams p;
      p.family = "helicoidal-scherk";
      p.n = n;
      p.h = h;
      const auto s = separate(p);
      ++numeric;
      min_gap = std::min(min_gap, s.min_gap);
      if (s.crossing || !(s.min_gap > 0.0)) bad += fmt(" scherk n=%d h=%g gap %.2e", n, h, s.min_gap);
    }
  for (int m : {2, 3, 4})
    for (double h : {0.5, 1.0}) {
      FamilyParams p;
      p.family = "helicoidal";
      p.m = m;
      p.h = h;
      p.f = m == 3 ? EdgeData::constant(0.5 * h) : linear_boundary_function(h * m / pi, pi / m);
      const auto s = separate(p);
      ++numeric;
      min_gap = std::min(min_gap, s.min_gap);
      if (s.crossing || !(s.min_gap > 0.0)) bad += fmt(" helicoidal m=%d h=%g gap %.2e", m, h, s.min_gap);
    }
  FamilyParams v;
  v.family = "helicoidal";
  v.m = 3;
  v.h = 1.0;
  v.f = EdgeData::constant(6.0);
  const auto cross = separate(v);
  if (!cross.crossing) bad += " no crossing for m=3 f=6h";
  ok &= bad.empty();
  return {ok, fmt("%d symbolic cases, %d numeric configurations with min gap %.3e, m=3 f=6h gap %.3e%s", configs,
                  numeric, min_gap, cross.min_gap, bad.empty() ? "" : (";" + bad).c_str())};
}

// 7. S^2n = T; P fixes pi and acts on x = i(p0 + w)/(p0 - w) by a shift.
Outcome group_algebra() {
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 4; ++n) {
    FamilyParams p;
    p.n = n;
    p.h = 1.0;
    const auto d = family_domain(p);
    const auto gens = family_generators(p, d);
    IsometryH2xR S, T;
    for (const auto& g : gens) {
      if (g.name == "S") S = g.iso;
      if (g.name == "T") T = g.iso;
    }
    const IsometryH2xR Sk = power(S, 2 * n);
    const bool exact_shift = Sk.vertical().shift == Rational(4 * n) && T.vertical().shift == Rational(4 * n);
    ok &= exact_shift && Sk.approx_equal(T, 1e-12);
  }
  detail = "S^2n = T for n = 1..4";

  FamilyParams q;
  q.family = "axis-at-infinity-scherk";
  q.theta = pi / 3;
  q.h = 1.0;
  const auto d = family_domain(q);
  IsometryH2xR P;
  for (const auto& g : family_generators(q, d))
    if (g.name == "P") P = g.iso;
  const cplx p0 = -1.0;
  const double fix = std::abs(P.disk().apply(p0) - p0);
  auto x = [&](cplx w) { return (cplx(0, 1) * (p0 + w) / (p0 - w)).real(); };
  const double c = x(P.disk().apply(cplx(1.0, 0.0))) - x(cplx(1.0, 0.0));
  double dev = 0.0;
  for (int k = -3; k <= 3; ++k) {
    const IsometryH2xR Pk = power(P, k);
    for (double t : {0.0, 0.4, 1.3, 2.0, 2.9, 4.0, 5.5}) {
      const cplx w = std::polar(1.0, t);
      dev = std::max(dev, std::abs(x(Pk.disk().apply(w)) - x(w) - k * c));
    }
  }
  const IdealPoint src(0.0), dst(P.disk().apply(IdealPoint(0.0)));
  const IsometryH2xR Q = parabolic_translation(IdealPoint(pi), src, dst);
  double qdev = 0.0;
  for (cplx z : {cplx(0.2, 0.1), cplx(-0.5, 0.3), cplx(0.1, -0.7)})
    qdev = std::max(qdev, std::abs(Q.disk().apply(z) - P.disk().apply(z)));
  ok &= fix < 1e-10 && dev < 1e-9 && qdev < 1e-10;
  return {ok, detail + fmt("; |P(p0) - p0| %.1e, shift c = %.6f, one-parameter deviation %.1e, P vs parabolic_translation %.1e", fix, c, dev, qdev)};
}

// 8. Scherk-type pieces have Cauchy total curvature, helicoidal ones do not.
Outcome curvature_dichotomy() {
  std::string detail;
  bool ok = true;
  std::map<std::string, std::vector<double>> gb;
  for (double ell : {0.1, 0.05}) {
    MeshGrading g;
    g.ell = ell;
    auto sweep = [&](const PolygonDomain& d, const char* name, bool expect_converge) {
      const Mesh mesh = triangulate(d, g);
      const auto sw = truncation_sweep(d, mesh, {4.0, 8.0, 16.0});
      const auto r = total_curvature(sw.solutions, {4.0, 8.0, 16.0});
      gb[name].push_back(max_gb(r));
      if (ell == 0.05) {
        const bool good = expect_converge ? r.verdict == CurvatureReport::Trend::Converging
                                          : r.verdict == CurvatureReport::Trend::Diverging;
        ok &= good;
        detail += fmt("%s%s %s", detail.empty() ? "" : ", ", name, to_string(r.verdict).c_str());
      }
    };
    auto arcs = [&](const PolygonDomain& d, const char* name) {
      std::vector<GraphSolution> pieces;
      const std::vector<double> levels{0.1, 0.05, 0.025};
      for (double eps : levels) {
        MeshGrading gh = g;
        gh.eps_arc = eps;
        pieces.push_back(solve(triangulate(d, gh), d, 0.0));
      }
      const auto r = total_curvature(pieces, levels);
      gb[name].push_back(max_gb(r));
      if (ell == 0.05) {
        ok &= r.verdict == CurvatureReport::Trend::Diverging;
        detail += fmt(", %s %s", name, to_string(r.verdict).c_str());
      }
    };
    sweep(scherk_triangle(2, 1.0), "scherk", true);
    sweep(axis_at_infinity_domain(pi / 3, 1.0, AxisScherkVariant{}), "axis-scherk", true);
    arcs(helicoidal_sector(4, 0.5, linear_boundary_function(2.0 / pi, pi / 4)), "helicoid");
    arcs(axis_at_infinity_domain(pi / 3, 1.0, AxisHelicoidalVariant{linear_boundary_function(3.0 / pi, pi / 3)}),
         "axis-helicoidal");
  }
  for (const auto& [name, v] : gb) {
    const bool shrink = v[1] < v[0] && v[1] < 10.0 * 0.05 && v[0] < 10.0 * 0.1;
    ok &= shrink;
    detail += fmt("; %s GB %.3f -> %.3f", name.c_str(), v[0], v[1]);
  }
  return {ok, detail};
}

// 9. Normal angles along +inf edges and finite ideal arcs.
Outcome normal_angles() {
  MeshGrading g;
  g.ell = 0.1;
  const auto d = scherk_triangle(2, 1.0);
  const auto sw = truncation_sweep(d, triangulate(d, g), {4.0, 8.0, 16.0});
  std::vector<double> mx;
  for (const auto& s : sw.solutions) {
    double a = 0.0;
    for (const auto& q : normal_angle_profile(s, 1)) a = std::max(a, q.angle);
    mx.push_back(a);
  }
  const bool dec = mx[1] < mx[0] && mx[2] < mx[1];
  const auto dh = helicoidal_sector(4, 0.5, linear_boundary_function(2.0 / pi, pi / 4));
  double mn = INFINITY;
  for (double eps : {0.1, 0.05, 0.025}) {
    MeshGrading gh = g;
    gh.eps_arc = eps;
    for (const auto& q : normal_angle_profile(solve(triangulate(dh, gh), dh, 0.0), 1)) mn = std::min(mn, q.angle);
  }
  return {dec && mn > 0.1, fmt("+inf edge max angle %.3e %.3e %.3e; arc min angle %.3f", mx[0], mx[1], mx[2], mn)};
}

// 10. Accumulation onto the vertical plane over the +inf side.
Outcome accumulation() {
  AssemblyOptions o;
  o.grading.ell = 0.1;
  o.word_length = 6;
  FamilyParams p;
  p.n = 2;
  p.h = 1.0;
  const Assembly a = assemble_family(p, o);
  const auto acc = accumulation_diagnostic(a.complex, a.domain.edge_geodesic(1), 0.1, {8.0});
  FamilyParams q;
  q.family = "axis-at-infinity-scherk";
  q.theta = pi / 3;
  q.h = 1.0;
  const Assembly b = assemble_family(q, o);
  int reports = 0;
  for (std::size_t e = 0; e < b.domain.size(); ++e)
    reports += accumulation_diagnostic(b.complex, b.domain.edge_geodesic(e), 0.1, {8.0}).accumulates;
  return {acc.accumulates && !acc.vacuous && reports == 0,
          fmt("helicoidal-Scherk: %zu copies near the plane, accumulates %d; axis family: %d of %zu edges report",
              acc.copies.size(), acc.accumulates, reports, b.domain.size())};
}

// 11. Jenkins-Serrin admissibility.
Outcome jenkins_serrin() {
  bool ok = true;
  double worst_rel = 0.0;
  std::string detail;
  auto stable = [&](const PolygonDomain& d) {
    const auto c = jenkins_serrin_certify(d);
    const auto half = jenkins_serrin_check(d, 0.5 * c.truncation);
    const double rel = std::abs(half.margin - c.margin) / std::abs(c.margin);
    worst_rel = std::max(worst_rel, rel);
    return c.admissible && half.admissible && rel < 0.05;
  };
  for (int n = 1; n <= 6; ++n) ok &= stable(scherk_triangle(n, 1.0));
  for (double q : {pi / 16, pi / 8, 3 * pi / 16}) ok &= stable(generalized_scherk_polygon(2, 1.0, {q}));
  // 0, 1, i, e^{3 pi i / 4} with +inf on 1-i and on i-e^{3 pi i / 4}
  const PolygonDomain bad(
      "degenerate",
      {DiskPoint(0.0, 0.0), IdealPoint(0.0), IdealPoint(pi / 2), IdealPoint(3 * pi / 4)},
      {{DomainEdge::Kind::GeodesicSide, EdgeData::constant(0.0)},
       {DomainEdge::Kind::GeodesicSide, EdgeData::plus_infinity()},
       {DomainEdge::Kind::GeodesicSide, EdgeData::plus_infinity()},
       {DomainEdge::Kind::GeodesicSide, EdgeData::constant(0.0)}});
  const auto r = jenkins_serrin_check(bad, 0.05);
  ok &= !r.admissible;
  return {ok, fmt("9 admissible domains, worst margin change under halving %.2f%%; degenerate polygon %s", 100 * worst_rel,
                  r.admissible ? "ACCEPTED" : "rejected")};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// 12. Two runs of the same configuration write identical bytes.
Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "hsurf-acceptance";
  fs::remove_all(root);
  std::vector<std::string> files;
  for (const char* sub : {"a", "b"}) {
    cli::RunConfig c;
    c.output_dir = (root / sub).string();
    files = cli::write_artifacts(c, cli::run_pipeline(c));
  }
  int differ = 0;
  for (const auto& f : files) {
    std::string a = slurp(root / "a" / f), b = slurp(root / "b" / f);
    if (f == "manifest.txt") {
      // the manifest records its own directory
      const auto strip = [&](std::string& s, const char* sub) {
        const std::string line = "dir = " + (root / sub).string() + "\n";
        if (auto at = s.find(line); at != std::string::npos) s.erase(at, line.size());
      };
      strip(a, "a");
      strip(b, "b");
    }
    differ += a != b || a.empty();
  }
  fs::remove_all(root);
  return {differ == 0 && !files.empty(), fmt("%zu artifacts, %d differ", files.size(), differ)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"helicoid-oracle", helicoid_oracle},
      {"radial-ode-oracle", radial_ode},
      {"maximum-and-comparison-principle", comparison_principle},
      {"exhaustion-monotonicity", exhaustion_monotone},
      {"sheet-arithmetic", sheet_arithmetic},
      {"embeddedness-condition", embeddedness},
      {"group-algebra", group_algebra},
      {"total-curvature-dichotomy", curvature_dichotomy},
      {"normal-angle-dichotomy", normal_angles},
      {"non-properness-diagnostic", accumulation},
      {"jenkins-serrin-checker", jenkins_serrin},
      {"determinism", determinism},
  };
  int failed = 0, k = 0;
  for (const auto& [name, run] : criteria) {
    ++k;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", k - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
