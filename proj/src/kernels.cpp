#include "hsurf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace hsurf {

std::vector<TriangleFactors> triangle_factors(const Mesh& m) {
  std::vector<TriangleFactors> out(m.triangles.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const cplx p[3] = {m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]};
    TriangleFactors& f = out[t];
    f.area = signed_area(p[0], p[1], p[2]);
    const cplx c = (p[0] + p[1] + p[2]) / 3.0;
    f.lambda = 2.0 / (1.0 - std::norm(c));
    for (int i = 0; i < 3; ++i) {
      const cplx q = (4.0 * p[i] + p[(i + 1) % 3] + p[(i + 2) % 3]) / 6.0;
      f.lambda_q[i] = 2.0 / (1.0 - std::norm(q));
    }
    for (int i = 0; i < 3; ++i) {
      const cplx u = p[(i + 1) % 3] - p[i];
      const cplx w = p[(i + 2) % 3] - p[i];
      f.weight[i] = (std::conj(u) * w).real() / (2.0 * f.area);
    }
  }
  return out;
}

std::vector<MeshEdge> interior_edges(const Mesh& m) {
  std::vector<std::tuple<int, int, int>> half;  // (min vertex, max vertex, slot)
  half.reserve(3 * m.triangles.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    for (int i = 0; i < 3; ++i) {
      const int a = m.triangles[t][(i + 1) % 3], b = m.triangles[t][(i + 2) % 3];
      half.emplace_back(std::min(a, b), std::max(a, b), static_cast<int>(3 * t + i));
    }
  std::sort(half.begin(), half.end());
  std::vector<MeshEdge> out;
  for (std::size_t k = 0; k < half.size();) {
    MeshEdge e;
    e.a = std::get<0>(half[k]);
    e.b = std::get<1>(half[k]);
    e.slot[0] = std::get<2>(half[k]);
    ++k;
    if (k < half.size() && std::get<0>(half[k]) == e.a && std::get<1>(half[k]) == e.b) e.slot[1] = std::get<2>(half[k++]);
    if (!m.tags[e.a].on_boundary() || !m.tags[e.b].on_boundary()) out.push_back(e);
  }
  return out;
}

std::vector<double> edge_couplings(const std::vector<MeshEdge>& edges, const Mesh& m,
                                   const std::vector<TriangleFactors>& f, const std::vector<double>& u) {
  std::vector<double> scale(m.triangles.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const double q = gradient_norm2(m, f[t], t, u);
    double a = 0.0;
    for (double lam : f[t].lambda_q) a += lam / (2.0 * std::sqrt(lam * lam + q));
    scale[t] = a / 3.0;
  }
  std::vector<double> out(edges.size(), 0.0);
  for (std::size_t k = 0; k < edges.size(); ++k)
    for (int slot : edges[k].slot)
      if (slot >= 0) out[k] += scale[slot / 3] * f[slot / 3].weight[slot % 3];
  return out;
}

void repair_edge(const MeshEdge& e, std::vector<TriangleFactors>& f) {
  double& w1 = f[e.slot[0] / 3].weight[e.slot[0] % 3];
  if (e.slot[1] < 0) {
    w1 = std::max(w1, 0.0);
    return;
  }
  double& w2 = f[e.slot[1] / 3].weight[e.slot[1] % 3];
  if (w1 + w2 <= 0.0) {
    w1 = w2 = 0.0;
  } else if (w1 < 0.0) {
    w2 += w1;
    w1 = 0.0;
  } else if (w2 < 0.0) {
    w1 += w2;
    w2 = 0.0;
  }
}

namespace {

// Local energy, gradient and Hessian of one triangle.
inline void triangle_terms(const TriangleFactors& f, const double (&u)[3], bool with_hessian, double& e,
                           std::array<double, 3>& g, std::array<double, 6>& h) {
  // K u with K = sum_i w_i (e_j - e_k)(e_j - e_k)^T
  double ku[3] = {0.0, 0.0, 0.0};
  double uku = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double d = u[j] - u[k];
    ku[j] += f.weight[i] * d;
    ku[k] -= f.weight[i] * d;
    uku += f.weight[i] * d * d;
  }
  const double q = uku / (2.0 * f.area);
  double a = 0.0, b = 0.0;
  e = 0.0;
  for (double lam : f.lambda_q) {
    const double s = std::sqrt(lam * lam + q);
    e += lam * s;
    a += lam / (2.0 * s);
    b += lam / (4.0 * f.area * s * s * s);
  }
  e *= f.area / 3.0;
  a /= 3.0;
  b /= 3.0;
  for (int i = 0; i < 3; ++i) g[i] = a * ku[i];
  if (!with_hessian) return;
  double K[3][3] = {};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    K[j][j] += f.weight[i];
    K[k][k] += f.weight[i];
    K[j][k] -= f.weight[i];
    K[k][j] -= f.weight[i];
  }
  int idx = 0;
  for (int r = 0; r < 3; ++r)
    for (int c = r; c < 3; ++c) h[idx++] = a * K[r][c] - b * ku[r] * ku[c];
}

}  // namespace

double gradient_norm2(const Mesh& m, const TriangleFactors& f, std::size_t t, const std::vector<double>& u) {
  const auto& tri = m.triangles[t];
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double d = u[tri[(i + 1) % 3]] - u[tri[(i + 2) % 3]];
    s += f.weight[i] * d * d;
  }
  return s / (2.0 * f.area);
}

double energy_change(const Mesh& m, const std::vector<TriangleFactors>& f, const std::vector<double>& u,
                     const std::vector<double>& du, Kernel kernel) {
  const long nt = static_cast<long>(m.triangles.size());
  std::vector<double> de(nt, 0.0);
  auto one = [&](long t) {
    const auto& tri = m.triangles[t];
    const TriangleFactors& ft = f[t];
    double dq = 0.0, q = 0.0;
    for (int i = 0; i < 3; ++i) {
      const int j = tri[(i + 1) % 3], k = tri[(i + 2) % 3];
      const double d = u[j] - u[k], dd = du[j] - du[k];
      q += ft.weight[i] * d * d;
      dq += ft.weight[i] * dd * (2.0 * d + dd);
    }
    if (dq == 0.0) return;
    q /= 2.0 * ft.area;
    dq /= 2.0 * ft.area;
    double e = 0.0;
    for (double lam : ft.lambda_q) e += lam * dq / (std::sqrt(lam * lam + q + dq) + std::sqrt(lam * lam + q));
    de[t] = e * ft.area / 3.0;
  };
  if (kernel == Kernel::Serial) {
    for (long t = 0; t < nt; ++t) one(t);
  } else {
#pragma omp parallel for schedule(static)
    for (long t = 0; t < nt; ++t) one(t);
  }
  double sum = 0.0;
  for (double x : de) sum += x;
  return sum;
}

void local_terms(const Mesh& m, const std::vector<TriangleFactors>& f, const std::vector<double>& u,
                 bool with_hessian, Kernel kernel, LocalTerms& out) {
  const std::size_t n = m.triangles.size();
  out.energy.resize(n);
  out.gradient.resize(n);
  if (with_hessian) out.hessian.resize(n);
  std::array<double, 6> scratch{};

  if (kernel == Kernel::Serial) {
    for (std::size_t t = 0; t < n; ++t) {
      const auto& tri = m.triangles[t];
      const double ul[3] = {u[tri[0]], u[tri[1]], u[tri[2]]};
      triangle_terms(f[t], ul, with_hessian, out.energy[t], out.gradient[t],
                     with_hessian ? out.hessian[t] : scratch);
    }
    return;
  }

  const long nt = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long t = 0; t < nt; ++t) {
    const auto& tri = m.triangles[t];
    const double ul[3] = {u[tri[0]], u[tri[1]], u[tri[2]]};
    std::array<double, 6> local{};
    triangle_terms(f[t], ul, with_hessian, out.energy[t], out.gradient[t],
                   with_hessian ? out.hessian[t] : local);
  }
}

}  // namespace hsurf
