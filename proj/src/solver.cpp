#include "hsurf/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hsurf/jenkins_serrin.hpp"
#include "hsurf/keyvalue.hpp"
#include "hsurf/mesher.hpp"

namespace hsurf {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

constexpr int kHessIndex[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};

struct Assembled {
  double energy = 0.0;
  double energy_abs = 0.0;
  std::vector<double> grad;
  std::vector<double> diag;
};

class AreaProblem {
 public:
  AreaProblem(const Mesh& m, Kernel kernel) : m_(m), kernel_(kernel), f_(triangle_factors(m)) {
    slot_.assign(m.vertices.size(), -1);
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
      if (!m.tags[v].on_boundary()) {
        slot_[v] = static_cast<int>(free_.size());
        free_.push_back(static_cast<int>(v));
      }
  }

  const std::vector<int>& free() const { return free_; }
  std::vector<TriangleFactors>& factors() { return f_; }
  int slot(int v) const { return slot_[v]; }

  Assembled assemble(const std::vector<double>& u, std::vector<Triplet>* hess) {
    local_terms(m_, f_, u, hess != nullptr, kernel_, terms_);
    Assembled a;
    a.grad.assign(m_.vertices.size(), 0.0);
    a.diag.assign(m_.vertices.size(), 0.0);
    if (hess) hess->clear();
    for (std::size_t t = 0; t < m_.triangles.size(); ++t) {
      const auto& tri = m_.triangles[t];
      a.energy += terms_.energy[t];
      a.energy_abs += std::abs(terms_.energy[t]);
      for (int i = 0; i < 3; ++i) a.grad[tri[i]] += terms_.gradient[t][i];
      if (!hess) continue;
      for (int i = 0; i < 3; ++i) {
        a.diag[tri[i]] += terms_.hessian[t][kHessIndex[i][i]];
        const int si = slot_[tri[i]];
        if (si < 0) continue;
        for (int j = 0; j < 3; ++j) {
          const int sj = slot_[tri[j]];
          if (sj >= 0) hess->emplace_back(si, sj, terms_.hessian[t][kHessIndex[i][j]]);
        }
      }
    }
    return a;
  }

  double energy(const std::vector<double>& u) {
    local_terms(m_, f_, u, false, kernel_, terms_);
    double e = 0.0;
    for (double x : terms_.energy) e += x;
    return e;
  }

  double energy_change(const std::vector<double>& u, const std::vector<double>& du) const {
    return hsurf::energy_change(m_, f_, u, du, kernel_);
  }

  double residual(const Assembled& a) const {
    double r = 0.0;
    for (int v : free_) r = std::max(r, std::abs(a.grad[v]) / std::max(a.diag[v], 1e-300));
    return r;
  }

 private:
  const Mesh& m_;
  Kernel kernel_;
  std::vector<TriangleFactors> f_;
  std::vector<int> slot_;
  std::vector<int> free_;
  LocalTerms terms_;
};

}  // namespace

double discrete_area(const Mesh& m, const std::vector<double>& u, Kernel kernel) {
  AreaProblem p(m, kernel);
  return p.energy(u);
}

double discrete_residual(const Mesh& m, const std::vector<double>& u, Kernel kernel) {
  AreaProblem p(m, kernel);
  std::vector<Triplet> h;
  return p.residual(p.assemble(u, &h));
}

std::vector<double> harmonic_extension(const Mesh& m, const std::vector<double>& data) {
  auto f = triangle_factors(m);
  for (const MeshEdge& e : interior_edges(m)) {
    double w = 0.0;
    for (int slot : e.slot)
      if (slot >= 0) w += f[slot / 3].weight[slot % 3];
    if (w < 0.0) repair_edge(e, f);
  }
  std::vector<int> slot(m.vertices.size(), -1);
  int n = 0;
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    if (!m.tags[v].on_boundary()) slot[v] = n++;
  std::vector<double> u = data;
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    if (slot[v] >= 0) u[v] = 0.0;
  if (n == 0) return u;

  std::vector<Triplet> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[(i + 1) % 3], b = tri[(i + 2) % 3];
      const double w = f[t].weight[i];
      if (w == 0.0) continue;
      for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
        if (slot[p] < 0) continue;
        trip.emplace_back(slot[p], slot[p], w);
        if (slot[q] >= 0)
          trip.emplace_back(slot[p], slot[q], -w);
        else
          rhs[slot[p]] += w * data[q];
      }
    }
  }
  SpMat A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<SpMat> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw SolverError("harmonic extension: singular system", INFINITY);
  const Eigen::VectorXd x = ldlt.solve(rhs);
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    if (slot[v] >= 0) u[v] = x[slot[v]];
  return u;
}

GraphSolution solve_dirichlet(const Mesh& m, const std::vector<double>& data, const SolverOptions& opt,
                              const std::vector<double>* initial) {
  if (data.size() != m.vertices.size()) throw std::invalid_argument("boundary data size does not match the mesh");
  AreaProblem prob(m, opt.kernel);
  GraphSolution sol;
  sol.mesh = m;
  if (initial) {
    if (initial->size() != m.vertices.size()) throw std::invalid_argument("initial guess size does not match the mesh");
    sol.u = *initial;
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
      if (m.tags[v].on_boundary()) sol.u[v] = data[v];
  } else {
    sol.u = harmonic_extension(m, data);
  }
  std::vector<double>& u = sol.u;
  const auto& free = prob.free();
  const int n = static_cast<int>(free.size());

  std::vector<Triplet> trip;
  Assembled a = prob.assemble(u, &trip);
  SpMat H(n, n);
  Eigen::SimplicialLDLT<SpMat> ldlt;
  bool analyzed = false;
  std::vector<double> trial(u.size());
  const std::vector<MeshEdge> edges = interior_edges(m);
  std::vector<char> repaired(edges.size(), 0);

  // Repairs every edge with a negative coupling at the current state.
  auto repair = [&]() {
    const auto w = edge_couplings(edges, m, prob.factors(), u);
    int count = 0;
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (w[k] < 0.0 && !repaired[k]) {
        repair_edge(edges[k], prob.factors());
        repaired[k] = 1;
        ++count;
      }
    sol.stats.repaired_edges += count;
    return count > 0;
  };

  // Obtuse corners are repaired up front so that the functional does not
  // depend on the path taken to the solution.
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& f = prob.factors();
    bool negative = false;
    for (int slot : edges[k].slot)
      if (slot >= 0) negative |= f[slot / 3].weight[slot % 3] < 0.0;
    if (!negative) continue;
    repair_edge(edges[k], prob.factors());
    repaired[k] = 1;
    ++sol.stats.repaired_edges;
  }
  a = prob.assemble(u, &trip);

  std::vector<double> step(u.size(), 0.0);
  auto line_search = [&](const Eigen::VectorXd& dir, double slope) {
    double alpha = 1.0;
    for (int k = 0; k < 60; ++k, alpha *= 0.5) {
      for (int i = 0; i < n; ++i) step[free[i]] = alpha * dir[i];
      const double de = prob.energy_change(u, step);
      if (std::isfinite(de) && de <= 1e-4 * alpha * slope) {
        trial = u;
        for (int i = 0; i < n; ++i) trial[free[i]] += step[free[i]];
        return true;
      }
    }
    return false;
  };

  for (int it = 0;; ++it) {
    sol.stats.energy_history.push_back(a.energy);
    const double r = prob.residual(a);
    sol.stats.residual_history.push_back(r);
    sol.residual = r;
    sol.energy = a.energy;
    if (n == 0) break;
    if (r <= opt.tol) {
      if (!repair()) break;
      // the functional changed: keep the histories of the final one
      sol.stats.energy_history.clear();
      sol.stats.residual_history.clear();
      a = prob.assemble(u, &trip);
      continue;
    }
    if (it >= opt.max_iterations) throw SolverError("Newton iteration budget exhausted", r);

    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = a.grad[free[i]];
    H.setFromTriplets(trip.begin(), trip.end());
    if (!analyzed) {
      ldlt.analyzePattern(H);
      analyzed = true;
    }
    ldlt.factorize(H);
    bool moved = false;
    if (ldlt.info() == Eigen::Success) {
      const Eigen::VectorXd dir = ldlt.solve(-g);
      const double slope = g.dot(dir);
      if (dir.allFinite() && slope < 0.0 && line_search(dir, slope)) {
        moved = true;
        ++sol.stats.newton_steps;
      }
    }
    if (!moved) {
      Eigen::VectorXd dir(n);
      for (int i = 0; i < n; ++i) dir[i] = -g[i] / std::max(a.diag[free[i]], 1e-300);
      const double slope = g.dot(dir);
      if (slope < 0.0 && line_search(dir, slope)) {
        moved = true;
        ++sol.stats.gradient_steps;
      }
    }
    if (!moved) {
      throw SolverError("line search failed to decrease the energy", r);
    }
    u.swap(trial);
    a = prob.assemble(u, &trip);
  }
  return sol;
}

GraphSolution solve(const Mesh& m, const PolygonDomain& d, double truncation, double tol) {
  SolverOptions opt;
  opt.tol = tol;
  return solve(m, d, truncation, opt);
}

GraphSolution solve(const Mesh& m, const PolygonDomain& d, double truncation, const SolverOptions& opt,
                    const std::vector<double>* initial) {
  if (d.has_infinite_data()) {
    double top = 0.0;
    if (d.has_finite_data()) {
      const auto [lo, hi] = d.finite_data_range();
      top = std::max(std::abs(lo), std::abs(hi));
    }
    if (!(truncation > top)) throw ParameterError("truncation height must exceed every finite boundary value");
  }
  GraphSolution sol = solve_dirichlet(m, boundary_values(d, m, truncation), opt, initial);
  sol.domain = d;
  sol.truncation = truncation;
  return sol;
}

cplx triangle_gradient(const Mesh& m, std::size_t t, const std::vector<double>& u) {
  const auto& tri = m.triangles[t];
  const cplx a = m.vertices[tri[0]], b = m.vertices[tri[1]], c = m.vertices[tri[2]];
  const double area2 = 2.0 * signed_area(a, b, c);
  // grad of the P1 hat function of vertex i is i*(opposite edge)/(2A) rotated inward
  cplx g = 0.0;
  const cplx p[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    const cplx e = p[(i + 2) % 3] - p[(i + 1) % 3];
    g += u[tri[i]] * cplx(-e.imag(), e.real()) / area2;
  }
  return g;
}

std::vector<NormalAngleSample> normal_angle_profile(const GraphSolution& sol, int edge) {
  const Mesh& m = sol.mesh;
  if (sol.domain && (edge < 0 || static_cast<std::size_t>(edge) >= sol.domain->size()))
    throw InvalidData("edge index out of range");
  std::vector<cplx> grad(m.vertices.size(), 0.0);
  std::vector<double> weight(m.vertices.size(), 0.0);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const double area = signed_area(m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]);
    const cplx g = triangle_gradient(m, t, sol.u);
    for (int v : tri) {
      grad[v] += area * g;
      weight[v] += area;
    }
  }

  std::optional<Geodesic> geo;
  double arc_start = 0.0, arc_span = kTwoPi;
  if (sol.domain) {
    const DomainEdge& e = sol.domain->edges()[edge];
    if (e.kind == DomainEdge::Kind::GeodesicSide) {
      geo = sol.domain->edge_geodesic(edge);
    } else {
      arc_start = std::get<IdealPoint>(sol.domain->edge_start(edge)).angle();
      arc_span = std::get<IdealPoint>(sol.domain->edge_end(edge)).angle() - arc_start;
      if (arc_span <= 0.0) arc_span += kTwoPi;
    }
  }
  auto param = [&](cplx z) {
    if (!geo) {
      double rel = std::fmod(std::arg(z) - arc_start + 2.0 * kTwoPi, kTwoPi);
      if (rel > kTwoPi - 1e-9) rel = 0.0;
      return rel / arc_span;
    }
    const cplx p = geo->start(), q = geo->end();
    if (geo->kind == Geodesic::Kind::Diameter) return (std::conj(q - p) * (z - p)).real() / std::norm(q - p);
    const double a0 = std::arg(p - geo->center);
    const double sweep = std::remainder(std::arg(q - geo->center) - a0, kTwoPi);
    return std::remainder(std::arg(z - geo->center) - a0, kTwoPi) / sweep;
  };

  std::vector<NormalAngleSample> out;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const BoundaryTag& t = m.tags[v];
    if (t.kind != BoundaryTag::Kind::Edge || t.index != edge || weight[v] == 0.0) continue;
    const cplx z = m.vertices[v];
    const double lam = 2.0 / (1.0 - std::norm(z));
    const double g = std::abs(grad[v] / weight[v]);
    out.push_back({param(z), std::atan2(lam, g)});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.param < y.param; });
  return out;
}

namespace {

const char* kind_name(BoundaryTag::Kind k) {
  switch (k) {
    case BoundaryTag::Kind::Interior:
      return "interior";
    case BoundaryTag::Kind::Edge:
      return "edge";
    case BoundaryTag::Kind::Cutoff:
      return "cutoff";
    case BoundaryTag::Kind::Corner:
      return "corner";
  }
  return "";
}

BoundaryTag::Kind kind_from(const std::string& s, int line) {
  if (s == "interior") return BoundaryTag::Kind::Interior;
  if (s == "edge") return BoundaryTag::Kind::Edge;
  if (s == "cutoff") return BoundaryTag::Kind::Cutoff;
  if (s == "corner") return BoundaryTag::Kind::Corner;
  throw ParseError(line, "unknown vertex tag '" + s + "'");
}

}  // namespace

std::string serialize(const GraphSolution& sol) {
  std::ostringstream os;
  os << "# hsurf solution v1\n[solution]\n";
  os << "truncation = " << format_double(sol.truncation) << "\n";
  os << "residual = " << format_double(sol.residual) << "\n";
  os << "energy = " << format_double(sol.energy) << "\n";
  os << "newton_steps = " << sol.stats.newton_steps << "\n";
  os << "gradient_steps = " << sol.stats.gradient_steps << "\n";
  os << "repaired_edges = " << sol.stats.repaired_edges << "\n";
  os << "ell = " << format_double(sol.mesh.grading.ell) << "\n";
  os << "delta = " << format_double(sol.mesh.grading.delta) << "\n";
  os << "eps_arc = " << format_double(sol.mesh.grading.eps_arc) << "\n";
  if (sol.domain) {
    // domain sections, verbatim minus the header comment
    std::string d = serialize(*sol.domain);
    os << d.substr(d.find('\n') + 1);
  }
  os << "[mesh.vertices]\n";
  for (std::size_t v = 0; v < sol.mesh.vertices.size(); ++v) {
    const cplx z = sol.mesh.vertices[v];
    const BoundaryTag& t = sol.mesh.tags[v];
    os << v << " = " << format_double(z.real()) << " " << format_double(z.imag()) << " "
       << format_double(sol.u[v]) << " " << kind_name(t.kind) << " " << t.index << " " << format_double(t.param)
       << "\n";
  }
  os << "[mesh.triangles]\n";
  for (std::size_t t = 0; t < sol.mesh.triangles.size(); ++t) {
    const auto& tri = sol.mesh.triangles[t];
    os << t << " = " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  }
  return os.str();
}

GraphSolution parse_solution(const std::string& text) {
  GraphSolution sol;
  std::ostringstream domain_text;
  bool has_domain = false;
  std::string last_section;
  std::size_t nv = 0, nt = 0;
  for (const auto& kv : parse_key_value(text)) {
    if (kv.section == "solution") {
      if (kv.key == "truncation") sol.truncation = parse_double(kv.value, kv.line);
      else if (kv.key == "residual") sol.residual = parse_double(kv.value, kv.line);
      else if (kv.key == "energy") sol.energy = parse_double(kv.value, kv.line);
      else if (kv.key == "newton_steps") sol.stats.newton_steps = static_cast<int>(parse_long(kv.value, kv.line));
      else if (kv.key == "gradient_steps") sol.stats.gradient_steps = static_cast<int>(parse_long(kv.value, kv.line));
      else if (kv.key == "repaired_edges") sol.stats.repaired_edges = static_cast<int>(parse_long(kv.value, kv.line));
      else if (kv.key == "ell") sol.mesh.grading.ell = parse_double(kv.value, kv.line);
      else if (kv.key == "delta") sol.mesh.grading.delta = parse_double(kv.value, kv.line);
      else if (kv.key == "eps_arc") sol.mesh.grading.eps_arc = parse_double(kv.value, kv.line);
      else throw ParseError(kv.line, "unknown key '" + kv.key + "' in [solution]");
    } else if (kv.section == "mesh.vertices") {
      if (parse_long(kv.key, kv.line) != static_cast<long>(nv++)) throw ParseError(kv.line, "vertex indices must be 0..n-1");
      const auto tok = split_ws(kv.value);
      if (tok.size() != 6) throw ParseError(kv.line, "vertex needs x y u tag index param");
      sol.mesh.vertices.emplace_back(parse_double(tok[0], kv.line), parse_double(tok[1], kv.line));
      sol.u.push_back(parse_double(tok[2], kv.line));
      BoundaryTag t;
      t.kind = kind_from(tok[3], kv.line);
      t.index = static_cast<int>(parse_long(tok[4], kv.line));
      t.param = parse_double(tok[5], kv.line);
      sol.mesh.tags.push_back(t);
    } else if (kv.section == "mesh.triangles") {
      if (parse_long(kv.key, kv.line) != static_cast<long>(nt++)) throw ParseError(kv.line, "triangle indices must be 0..n-1");
      const auto tok = split_ws(kv.value);
      if (tok.size() != 3) throw ParseError(kv.line, "triangle needs three vertex indices");
      std::array<int, 3> tri{};
      for (int i = 0; i < 3; ++i) {
        const long v = parse_long(tok[i], kv.line);
        if (v < 0 || static_cast<std::size_t>(v) >= sol.mesh.vertices.size())
          throw ParseError(kv.line, "triangle references an unknown vertex");
        tri[i] = static_cast<int>(v);
      }
      sol.mesh.triangles.push_back(tri);
    } else {
      has_domain = true;
      if (kv.section != last_section) domain_text << "[" << kv.section << "]\n";
      last_section = kv.section;
      domain_text << kv.key << " = " << kv.value << "\n";
    }
  }
  if (has_domain) sol.domain = parse_domain(domain_text.str());
  return sol;
}

}  // namespace hsurf
