#pragma once

// Per-triangle terms of the discrete area functional
//
//   E(u) = sum_T A_T mean_p lambda_p sqrt(lambda_p^2 + q_T(u)),
//   q_T(u) = (1 / 2A_T) sum_i w_i (u_j - u_k)^2,
//
// with lambda_p the conformal factor at three quadrature points of T and w_i
// the cotangent of the angle at corner i. The stationarity condition at an
// interior vertex is
//
//   sum_j W_ij (u_i - u_j) = 0,   W_ij = sum_{T at ij} a_T w_T,
//
// a_T = mean_p lambda_p / (2 s_p), s_p = sqrt(lambda_p^2 + q_T). When every W_ij is nonnegative each interior
// value is a weighted mean of its neighbours, which is the discrete maximum
// principle. On a Delaunay mesh the two raw cotangents across an edge have a
// nonnegative sum, so W_ij < 0 needs an obtuse angle and a large jump in s_T
// across the edge. Such edges are repaired by moving the negative cotangent
// onto its partner, which leaves the edge term of the Dirichlet form alone and
// makes both contributions nonnegative.
//
// Two kernels compute the same local terms: a plain serial loop kept as the
// reference, and an OpenMP loop over triangles. Global assembly scatters the
// local terms in triangle order, so both give bit-identical results.

#include <array>
#include <vector>

#include "hsurf/mesh.hpp"

namespace hsurf {

struct TriangleFactors {
  double area = 0.0;    // Euclidean area in the chart
  double lambda = 0.0;  // conformal factor at the centroid
  std::array<double, 3> lambda_q{};  // at the three interior quadrature points
  std::array<double, 3> weight{};  // cotangent at each corner, facing the opposite edge
};

std::vector<TriangleFactors> triangle_factors(const Mesh& m);

struct MeshEdge {
  int a = 0, b = 0;  // a < b
  int slot[2] = {-1, -1};  // 3 * triangle + corner facing the edge; slot[1] < 0 on the boundary
};

/// Edges with at least one interior endpoint, in (a, b) order.
std::vector<MeshEdge> interior_edges(const Mesh& m);

/// W_ij for each edge of `edges` at the state u.
std::vector<double> edge_couplings(const std::vector<MeshEdge>& edges, const Mesh& m,
                                   const std::vector<TriangleFactors>& f, const std::vector<double>& u);

/// Makes both cotangents facing the edge nonnegative, keeping their sum where
/// it is positive.
void repair_edge(const MeshEdge& e, std::vector<TriangleFactors>& f);

struct LocalTerms {
  std::vector<double> energy;
  std::vector<std::array<double, 3>> gradient;
  std::vector<std::array<double, 6>> hessian;  // upper triangle: 00 01 02 11 12 22
};

enum class Kernel { Serial, Parallel };

void local_terms(const Mesh& m, const std::vector<TriangleFactors>& f, const std::vector<double>& u,
                 bool with_hessian, Kernel kernel, LocalTerms& out);

/// E(u + du) - E(u), summed from per-triangle differences written without
/// cancellation, so that steps far below the resolution of E still compare.
double energy_change(const Mesh& m, const std::vector<TriangleFactors>& f, const std::vector<double>& u,
                     const std::vector<double>& du, Kernel kernel);

/// Squared gradient surrogate q_T of one triangle.
double gradient_norm2(const Mesh& m, const TriangleFactors& f, std::size_t t, const std::vector<double>& u);

}  // namespace hsurf
