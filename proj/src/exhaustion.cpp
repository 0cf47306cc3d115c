#include "hsurf/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hsurf/jenkins_serrin.hpp"
#include "hsurf/keyvalue.hpp"
#include "hsurf/mesher.hpp"

namespace hsurf {

std::vector<cplx> probe_points(const PolygonDomain& d, const Mesh& m, double margin) {
  std::vector<Geodesic> infinite;
  for (std::size_t e = 0; e < d.size(); ++e)
    if (d.edges()[e].data.is_infinite()) infinite.push_back(d.edge_geodesic(e));

  // finite vertices where the two adjacent constants differ
  std::vector<cplx> jumps;
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (is_ideal(d.vertices()[k])) continue;
    const EdgeData& a = d.edges()[(k + n - 1) % n].data;
    const EdgeData& b = d.edges()[k].data;
    if (a.is_infinite() || b.is_infinite()) continue;
    if (a.value_at(0.0, 0.0) != b.value_at(0.0, 0.0)) jumps.push_back(coordinate(d.vertices()[k]));
  }

  std::vector<cplx> out;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    if (m.tags[v].on_boundary()) continue;
    const cplx z = m.vertices[v];
    bool keep = true;
    for (const auto& g : infinite)
      if (distance_to_geodesic(g, z) <= margin) keep = false;
    for (const cplx& j : jumps)
      if (hyp_distance(j, z) <= margin) keep = false;
    if (keep) out.push_back(z);
  }
  return out;
}

std::vector<double> sample_solution(const GraphSolution& sol, const std::vector<cplx>& points) {
  const MeshLocator loc(sol.mesh);
  std::vector<double> out;
  out.reserve(points.size());
  for (const cplx& z : points) {
    const auto v = loc.interpolate(z, sol.u);
    if (!v) throw InvalidData("probe point lies outside the mesh");
    out.push_back(*v);
  }
  return out;
}

double linf_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

void write_level_csv(std::ostream& os, const std::vector<LevelReport>& rows) {
  os << "level,ell,M,residual,probe_error\n";
  for (const auto& r : rows)
    os << r.level << "," << format_double(r.ell) << "," << format_double(r.truncation) << ","
       << format_double(r.residual) << "," << (std::isnan(r.probe_error) ? "" : format_double(r.probe_error))
       << "\n";
}

SweepResult truncation_sweep(const PolygonDomain& d, const Mesh& mesh, const std::vector<double>& Ms,
                             const SolverOptions& opt) {
  if (Ms.empty()) throw ParameterError("truncation sweep needs at least one height");
  for (std::size_t i = 1; i < Ms.size(); ++i)
    if (!(Ms[i] > Ms[i - 1])) throw ParameterError("truncation heights must be strictly increasing");
  if (d.has_infinite_data()) {
    const JSCertificate cert = jenkins_serrin_certify(d);
    if (!cert.admissible) throw ParameterError("domain fails the Jenkins-Serrin condition");
  }

  SweepResult res;
  res.probes = probe_points(d, mesh);
  std::vector<double> prev;
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const std::vector<double>* warm = res.solutions.empty() ? nullptr : &res.solutions.back().u;
    res.solutions.push_back(solve(mesh, d, Ms[i], opt, warm));
    const GraphSolution& s = res.solutions.back();
    std::vector<double> vals = sample_solution(s, res.probes);
    LevelReport r;
    r.level = static_cast<int>(i);
    r.ell = mesh.grading.ell;
    r.truncation = Ms[i];
    r.residual = s.residual;
    r.probe_error = prev.empty() ? std::numeric_limits<double>::quiet_NaN() : linf_difference(vals, prev);
    res.report.push_back(r);
    prev = std::move(vals);
  }
  return res;
}

RefineResult refine_until(const PolygonDomain& d, const RefineOptions& opt) {
  RefineResult res;
  std::vector<double> prev;
  MeshGrading g = opt.grading;
  for (int k = 0; k < opt.max_levels; ++k) {
    const Mesh mesh = triangulate(d, g);
    if (k == 0) res.probes = probe_points(d, mesh, opt.probe_margin);
    res.levels.push_back(solve(mesh, d, opt.truncation, opt.solver));
    const GraphSolution& s = res.levels.back();
    std::vector<double> vals = sample_solution(s, res.probes);

    LevelReport r;
    r.level = k;
    r.ell = g.ell;
    r.truncation = opt.truncation;
    r.residual = s.residual;
    r.probe_error = std::numeric_limits<double>::quiet_NaN();
    if (opt.exact) {
      double e = 0.0;
      for (std::size_t i = 0; i < vals.size(); ++i) e = std::max(e, std::abs(vals[i] - opt.exact(res.probes[i])));
      res.errors.push_back(e);
      r.probe_error = e;
      if (res.errors.size() > 1) {
        const double a = res.errors[res.errors.size() - 2];
        res.orders.push_back(std::log2(a / e));
      }
    }
    if (!prev.empty()) {
      const double diff = linf_difference(vals, prev);
      res.successive.push_back(diff);
      if (!opt.exact) {
        r.probe_error = diff;
        if (res.successive.size() > 1)
          res.orders.push_back(std::log2(res.successive[res.successive.size() - 2] / diff));
      }
    }
    res.report.push_back(r);
    prev = std::move(vals);

    if (k + 1 >= opt.min_levels && !res.successive.empty() && res.successive.back() < opt.target) {
      res.converged = true;
      return res;
    }
    g.ell *= 0.5;
  }
  throw RefinementBudgetExhausted(std::move(res));
}

}  // namespace hsurf
