#pragma once

// Embeddedness (exact sheet ordering and numeric separation), total curvature
// of fundamental pieces, and accumulation onto vertical planes.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hsurf/assembler.hpp"

namespace hsurf {

enum class Verdict { Embedded, EmbeddedIff, Unknown };
std::string to_string(Verdict v);

struct SheetWitness {
  int sector = 0;
  Sheet first, second;
  bool crossing = false;  // certain crossing (otherwise undecidable on the range)
};

struct EmbeddingReport {
  Verdict verdict = Verdict::Unknown;
  std::string condition;  // for EmbeddedIff: "lo <= f/h <= hi"
  std::optional<std::pair<Rational, Rational>> f_interval;  // in units of h, closed
  std::optional<SheetWitness> witness;
  int pairs_checked = 0;
};

/// Compares every pair of sheets over every sector edgewise, with f / h
/// ranging over `f_range`. Without a range the set of f / h for which all
/// pairs are ordered is derived. Only the rotational families apply.
EmbeddingReport symbolic_embedding_check(const FamilyParams& p,
                                         const std::optional<std::pair<Rational, Rational>>& f_range,
                                         int k_window = 2);

struct SeparationReport {
  double min_gap = INFINITY;  // negative when two sheets cross
  double min_gap_h = INFINITY;  // in units of h
  cplx location{0.0, 0.0};
  std::pair<std::size_t, std::size_t> pair{0, 0};  // placements realizing it
  bool crossing = false;
  int probes = 0;
  int pairs = 0;
};

/// Evaluates all placed copies at the images of up to `samples` probe points
/// of the piece (at distance > margin from infinite-data edges) and returns
/// the smallest vertical distance between two sheets over a common point.
/// Pairs taking both signs count as crossings.
SeparationReport numeric_sheet_separation(const SurfaceComplex& c, int samples = 150, double margin = 0.5);

/// Signed separation of two graphs on one mesh: min over interior vertices
/// of upper - lower.
SeparationReport graph_separation(const GraphSolution& lower, const GraphSolution& upper);

class MeshQualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Length of the lifted edge (z_a, u_a)-(z_b, u_b) in the metric
/// lambda^2 |dz|^2 + dt^2, by 3-point Gauss quadrature.
double lifted_edge_length(cplx za, double ua, cplx zb, double ub);

struct CurvatureLevel {
  double level = 0.0;  // truncation height or arc offset
  double ell = 0.0;
  double total_curvature = 0.0;  // sum of angle defects at interior vertices
  double boundary_term = 0.0;  // geodesic curvature plus exterior angles
  double gb_residual = 0.0;  // |total + boundary - 2 pi chi|
};

struct CurvatureReport {
  std::vector<CurvatureLevel> levels;
  enum class Trend { Converging, Diverging, Inconclusive } verdict = Trend::Inconclusive;
};
std::string to_string(CurvatureReport::Trend t);

/// Discrete total curvature of one solved piece. Lifted horizontal geodesic
/// sides have zero geodesic curvature; the rest of the boundary term comes
/// from the discrete turning pi - (angle sum) at the remaining boundary
/// vertices.
CurvatureLevel piece_curvature(const GraphSolution& piece, double level);

/// One level per solution. Converging when the level-to-level changes of the
/// total curvature strictly decrease in size, diverging when they do not
/// decrease and |total| grows.
CurvatureReport total_curvature(const std::vector<GraphSolution>& pieces, const std::vector<double>& levels);

struct CopyNearPlane {
  std::size_t placement = 0;
  int points = 0;
  double t_min = 0.0, t_max = 0.0;
  double min_abs = 0.0;  // smallest |t| among the points
};

struct AccumulationReport {
  double eps = 0.0;
  std::vector<CopyNearPlane> copies;
  std::vector<std::pair<double, bool>> heights;  // (K, some copy near the plane with all |t| > K)
  bool vacuous = false;  // eps exceeds the diameter of the truncated piece
  bool accumulates = false;
};

/// Mesh vertices of every placed copy within hyperbolic distance eps of the
/// vertical plane over `plane`.
AccumulationReport accumulation_diagnostic(const SurfaceComplex& c, const Geodesic& plane, double eps,
                                           const std::vector<double>& Ks);

enum class NonperiodicEmbedding { Guaranteed, NotGuaranteed };
std::string to_string(NonperiodicEmbedding e);
/// Embedded when theta <= pi/2 or f > 0.
NonperiodicEmbedding nonperiodic_embedding_flag(double theta, const EdgeData& f);

void write_curvature_csv(std::ostream& os, const CurvatureReport& r);
void write_separation_csv(std::ostream& os, const SeparationReport& r);
void write_accumulation_csv(std::ostream& os, const AccumulationReport& r, const SurfaceComplex& c);

}  // namespace hsurf
