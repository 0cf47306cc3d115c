#pragma once

// Extension of a fundamental piece to the complete surface: exact sheet
// bookkeeping over the sectors, Schwarz reflections, group orbits and OBJ
// export.

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hsurf/exhaustion.hpp"
#include "hsurf/isometry.hpp"
#include "hsurf/solver.hpp"

namespace hsurf {

/// c_h * h + f_sign * f, or +-infinity.
class HeightExpr {
 public:
  enum class Kind { Finite, PlusInfinity, MinusInfinity };

  HeightExpr() = default;
  static HeightExpr value(Rational c_h, int f_sign = 0);
  static HeightExpr plus_infinity();
  static HeightExpr minus_infinity();

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& c_h() const { return c_h_; }
  int f_sign() const { return f_sign_; }

  HeightExpr shifted(const Rational& c) const;  // + c h
  HeightExpr negated() const;
  HeightExpr reflected(const Rational& c) const;  // t -> 2ch - t

  double evaluate(double h, double f) const;
  std::string str() const;

  friend bool operator==(const HeightExpr&, const HeightExpr&) = default;

 private:
  Kind kind_ = Kind::Finite;
  Rational c_h_{0};
  int f_sign_ = 0;
};

/// Range of (a - b) / h for f / h in [f_lo, f_hi]. Infinite differences
/// collapse to +-1 (only the sign matters); equal infinities give 0.
struct DiffRange {
  Rational lo, hi;
};
DiffRange difference(const HeightExpr& a, const HeightExpr& b, const Rational& f_lo, const Rational& f_hi);

using SheetTriple = std::array<HeightExpr, 3>;  // edges at angles (i-1)a, ia, outer edge

struct Sheet {
  SheetTriple values;
  std::string word;
};

struct SheetStack {
  int sector = 1;
  std::vector<Sheet> sheets;  // sorted by the first value's c_h
};

/// Sectors of a rotationally generated family: `sectors` copies of the piece
/// around the origin, translation period `period` (in units of h) and the
/// outer data of the piece (+inf, or f).
struct SheetFamily {
  int sectors = 4;
  Rational period{4};
  bool helicoidal = false;
};
SheetFamily scherk_sheets(int n);
SheetFamily helicoidal_sheets(int m);

/// Sheets of the reflected surface over one sector (1-based) together with
/// the axis-reflected ones, for k in [-k_window, k_window].
SheetStack sheet_stack(const SheetFamily& fam, int sector, int k_window = 2);
/// Helicoidal-Scherk stack.
SheetStack sheet_stack(int n, double h, int sector, int k_window = 2);

struct HelicoidalSheetValues {
  SheetTriple sector_m1;      // over sector m+1
  SheetTriple axis_reflected;  // (0, h, f)
};
HelicoidalSheetValues helicoidal_sheet_values(int m);

struct Generator {
  std::string name;
  IsometryH2xR iso;
};

struct Placement {
  std::string word;  // generator names joined by '.', "e" for the identity
  IsometryH2xR iso;
  int length = 0;
};

struct SurfaceComplex {
  std::string family;
  std::shared_ptr<const GraphSolution> piece;
  std::shared_ptr<const MeshLocator> locator;
  std::vector<Generator> generators;
  std::vector<Placement> placements;
  int word_length = 0;
  std::vector<std::string> symmetries;  // description of the symmetries used

  const Generator& generator(const std::string& name) const;
};

SurfaceComplex make_complex(std::string family, GraphSolution piece, std::vector<Generator> generators);

/// Breadth-first enumeration of all words of length <= L in the generators,
/// deduplicated by isometry (exact vertical part, Mobius part to 1e-10).
SurfaceComplex orbit(SurfaceComplex c, int L);

/// Rotation by pi about the horizontal geodesic carrying the constant data of
/// `edge`. The shift is measured in `unit` and must be exact there.
Placement schwarz_reflect_horizontal(const GraphSolution& piece, int edge, double unit);

struct VerticalAxis {};
struct HorizontalAxis {
  int edge = 0;
};
using Axis = std::variant<VerticalAxis, HorizontalAxis>;

/// Vertical axis: (z, t) -> (-z, t), requires the origin to be a vertex of
/// the domain. Horizontal axis: same as schwarz_reflect_horizontal.
Placement axis_reflect(const GraphSolution& piece, const Axis& axis, double unit);

struct SheetValue {
  std::size_t placement = 0;
  double height = 0.0;
};
/// Heights of every placed copy lying over z.
std::vector<SheetValue> evaluate(const SurfaceComplex& c, cplx z);

/// Wavefront OBJ: one group per placement ("g <word>"), vertices "v x y t"
/// in placement order, then mesh order; faces reversed for orientation
/// reversing disk maps.
void write_obj(std::ostream& os, const SurfaceComplex& c);

// Families.

struct FamilyParams {
  std::string family = "helicoidal-scherk";
  int n = 2;
  int m = 4;
  double theta = 1.0471975511965976;  // pi / 3
  double h = 0.5;
  std::vector<double> qs;
  std::optional<EdgeData> f;
};

extern const std::vector<std::string> kFamilies;

/// Domain of the fundamental piece (validates the parameters).
PolygonDomain family_domain(const FamilyParams& p);
/// Generators for the family's piece, inverses included.
std::vector<Generator> family_generators(const FamilyParams& p, const PolygonDomain& d);

struct AssemblyOptions {
  MeshGrading grading;
  std::vector<double> truncations{4.0, 8.0, 16.0};
  int word_length = 6;
  SolverOptions solver;
};

struct Assembly {
  PolygonDomain domain;
  Mesh mesh;
  SweepResult sweep;  // one level per truncation (a single level without infinite data)
  SurfaceComplex complex;
};

Assembly assemble_family(const FamilyParams& p, const AssemblyOptions& opt = {});

}  // namespace hsurf
