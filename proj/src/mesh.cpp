#include "hsurf/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace hsurf {

std::vector<int> Mesh::interior_vertices() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (!tags[v].on_boundary()) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<int> Mesh::boundary_vertices() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (tags[v].on_boundary()) out.push_back(static_cast<int>(v));
  return out;
}

double signed_area(cplx a, cplx b, cplx c) {
  const cplx u = b - a;
  const cplx w = c - a;
  return 0.5 * (u.real() * w.imag() - u.imag() * w.real());
}

double hyperbolic_diameter(const Mesh& m, std::size_t t) {
  const auto& tri = m.triangles[t];
  double d = 0.0;
  for (int k = 0; k < 3; ++k)
    d = std::max(d, hyp_distance(m.vertices[tri[k]], m.vertices[tri[(k + 1) % 3]]));
  return d;
}

MeshLocator::MeshLocator(const Mesh& mesh, int cells_per_side) : mesh_(&mesh) {
  double x1 = -INFINITY, y1 = -INFINITY;
  x0_ = INFINITY;
  y0_ = INFINITY;
  for (const cplx& z : mesh.vertices) {
    x0_ = std::min(x0_, z.real());
    y0_ = std::min(y0_, z.imag());
    x1 = std::max(x1, z.real());
    y1 = std::max(y1, z.imag());
  }
  if (mesh.vertices.empty()) return;
  if (cells_per_side <= 0)
    cells_per_side = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(mesh.triangles.size()))), 1, 2048);
  cell_ = std::max(x1 - x0_, y1 - y0_) / cells_per_side * (1.0 + 1e-9) + 1e-300;
  nx_ = std::max(1, static_cast<int>(std::ceil((x1 - x0_) / cell_)) + 1);
  ny_ = std::max(1, static_cast<int>(std::ceil((y1 - y0_) / cell_)) + 1);
  buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    double bx0 = INFINITY, by0 = INFINITY, bx1 = -INFINITY, by1 = -INFINITY;
    for (int v : tri) {
      bx0 = std::min(bx0, mesh.vertices[v].real());
      by0 = std::min(by0, mesh.vertices[v].imag());
      bx1 = std::max(bx1, mesh.vertices[v].real());
      by1 = std::max(by1, mesh.vertices[v].imag());
    }
    const int i0 = static_cast<int>((bx0 - x0_) / cell_), i1 = static_cast<int>((bx1 - x0_) / cell_);
    const int j0 = static_cast<int>((by0 - y0_) / cell_), j1 = static_cast<int>((by1 - y0_) / cell_);
    for (int i = std::max(0, i0); i <= std::min(nx_ - 1, i1); ++i)
      for (int j = std::max(0, j0); j <= std::min(ny_ - 1, j1); ++j)
        buckets_[static_cast<std::size_t>(i) * ny_ + j].push_back(static_cast<int>(t));
  }
}

std::optional<MeshLocator::Hit> MeshLocator::locate(cplx z, double tol) const {
  if (buckets_.empty()) return std::nullopt;
  const int i = static_cast<int>(std::floor((z.real() - x0_) / cell_));
  const int j = static_cast<int>(std::floor((z.imag() - y0_) / cell_));
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return std::nullopt;
  std::optional<Hit> best;
  double best_min = -INFINITY;
  for (int t : buckets_[static_cast<std::size_t>(i) * ny_ + j]) {
    const auto& tri = mesh_->triangles[t];
    const cplx a = mesh_->vertices[tri[0]], b = mesh_->vertices[tri[1]], c = mesh_->vertices[tri[2]];
    const double area = signed_area(a, b, c);
    Hit h;
    h.triangle = t;
    h.bary = {signed_area(z, b, c) / area, signed_area(a, z, c) / area, signed_area(a, b, z) / area};
    const double mn = std::min({h.bary[0], h.bary[1], h.bary[2]});
    if (mn >= 0.0) return h;
    if (mn > best_min) {
      best_min = mn;
      best = h;
    }
  }
  if (best && best_min >= -tol) return best;
  return std::nullopt;
}

std::optional<double> MeshLocator::interpolate(cplx z, const std::vector<double>& values) const {
  const auto hit = locate(z);
  if (!hit) return std::nullopt;
  const auto& tri = mesh_->triangles[hit->triangle];
  return hit->bary[0] * values[tri[0]] + hit->bary[1] * values[tri[1]] + hit->bary[2] * values[tri[2]];
}

Mesh transform(const Mesh& m, const DiskMap& map) {
  Mesh out = m;
  for (cplx& z : out.vertices) z = map.apply(z);
  if (map.conjugate)
    for (auto& t : out.triangles) std::swap(t[1], t[2]);
  return out;
}

}  // namespace hsurf
