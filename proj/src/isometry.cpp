#include "hsurf/isometry.hpp"

#include <array>
#include <cctype>
#include <cmath>

namespace hsurf {

namespace {

using Mat2 = std::array<cplx, 4>;  // row-major [m11, m12, m21, m22]

Mat2 to_matrix(const DiskMap& m) { return {m.rot, -m.a * m.rot, -std::conj(m.a), 1.0}; }

Mat2 conj(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
}

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

DiskMap from_matrix(const Mat2& m, bool conjugate) {
  DiskMap out;
  out.a = -m[1] / m[0];
  const cplx r = m[0] / m[3];
  out.rot = r / std::abs(r);
  out.conjugate = conjugate;
  return out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + text);
    return num / den;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  boost::multiprecision::cpp_int mant = 0;
  int exp10 = 0;
  bool digits = false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mant = mant * 10 + (c - '0');
      if (dot) --exp10;
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw std::invalid_argument("not a number: " + text);
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("not a number: " + text);
    std::size_t used = 0;
    const std::string tail = s.substr(i + 1);
    int e = 0;
    try {
      e = std::stoi(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent: " + text);
    }
    if (used != tail.size()) throw std::invalid_argument("not a number: " + text);
    exp10 += e;
  }
  Rational r{mant};
  const boost::multiprecision::cpp_int ten = 10;
  if (exp10 > 0) r *= Rational{boost::multiprecision::pow(ten, static_cast<unsigned>(exp10))};
  if (exp10 < 0) r /= Rational{boost::multiprecision::pow(ten, static_cast<unsigned>(-exp10))};
  return neg ? Rational{-r} : r;
}

std::string to_string(const Rational& r) { return r.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

cplx DiskMap::apply(cplx z) const {
  const cplx w = conjugate ? std::conj(z) : z;
  return rot * (w - a) / (1.0 - std::conj(a) * w);
}

IdealPoint DiskMap::apply(const IdealPoint& p) const {
  return IdealPoint(std::arg(apply(p.unit())));
}

DiskMap DiskMap::inverse() const {
  const Mat2 m = to_matrix(*this);
  const Mat2 inv{m[3], -m[1], -m[2], m[0]};
  return conjugate ? from_matrix(conj(inv), true) : from_matrix(inv, false);
}

DiskMap compose(const DiskMap& outer, const DiskMap& inner) {
  const Mat2 mo = to_matrix(outer);
  const Mat2 mi = to_matrix(inner);
  return from_matrix(mul(mo, outer.conjugate ? conj(mi) : mi), outer.conjugate != inner.conjugate);
}

double VerticalMap::apply(double t) const { return (flip ? -t : t) + offset(); }

IsometryH2xR::Point IsometryH2xR::apply(const Point& p) const {
  return {DiskPoint(disk_.apply(p.z.z())), vertical_.apply(p.t)};
}

IsometryH2xR IsometryH2xR::inverse() const {
  // t = s*t' + c  =>  t' = s*t - s*c
  VerticalMap v = vertical_;
  v.shift = vertical_.flip ? vertical_.shift : Rational{-vertical_.shift};
  return {disk_.inverse(), v};
}

bool IsometryH2xR::approx_equal(const IsometryH2xR& other, double tol) const {
  if (disk_.conjugate != other.disk_.conjugate) return false;
  if (vertical_.flip != other.vertical_.flip) return false;
  if (vertical_.shift != other.vertical_.shift) return false;
  if (vertical_.shift != 0 && vertical_.unit != other.vertical_.unit) return false;
  return std::abs(disk_.rot - other.disk_.rot) <= tol && std::abs(disk_.a - other.disk_.a) <= tol;
}

IsometryH2xR compose(const IsometryH2xR& a, const IsometryH2xR& b) {
  const VerticalMap& va = a.vertical();
  const VerticalMap& vb = b.vertical();
  if (va.shift != 0 && vb.shift != 0 && va.unit != vb.unit)
    throw std::invalid_argument("compose: vertical shifts measured in different units");
  VerticalMap v;
  v.flip = va.flip != vb.flip;
  v.shift = (va.flip ? Rational{-vb.shift} : vb.shift) + va.shift;
  v.unit = va.shift != 0 ? va.unit : vb.unit;
  return {compose(a.disk(), b.disk()), v};
}

IsometryH2xR power(const IsometryH2xR& g, int k) {
  IsometryH2xR base = k < 0 ? g.inverse() : g;
  IsometryH2xR out;
  for (int i = 0; i < std::abs(k); ++i) out = compose(base, out);
  return out;
}

IsometryH2xR rotation_about_origin(double alpha) {
  DiskMap d;
  d.rot = std::polar(1.0, alpha);
  return {d, VerticalMap{}};
}

IsometryH2xR vertical_translation(const Rational& coeff, double unit) {
  return {DiskMap{}, VerticalMap{false, coeff, unit}};
}

IsometryH2xR vertical_flip(const Rational& coeff, double unit) {
  return {DiskMap{}, VerticalMap{true, Rational{2 * coeff}, unit}};
}

IsometryH2xR disk_reflection(const Geodesic& g) {
  DiskMap d;
  d.conjugate = true;
  if (g.kind == Geodesic::Kind::Diameter) {
    d.rot = g.direction * g.direction;
  } else {
    // z -> c + r^2 / (conj(z) - conj(c)) = -(c/conj(c)) (w - 1/c) / (1 - w/conj(c))
    d.a = 1.0 / g.center;
    const cplx r = -g.center / std::conj(g.center);
    d.rot = r / std::abs(r);
  }
  return {d, VerticalMap{}};
}

IsometryH2xR half_turn_about(const Geodesic& g, const Rational& coeff, double unit) {
  return compose(vertical_flip(coeff, unit), disk_reflection(g));
}

IsometryH2xR axis_half_turn() { return rotation_about_origin(std::numbers::pi); }

IsometryH2xR parabolic_translation(const IdealPoint& fixed, const IdealPoint& src,
                                   const IdealPoint& dst) {
  if (fixed == src || fixed == dst)
    throw DegenerateGeodesic("parabolic_translation: source or target equals the fixed point");
  const cplx f = fixed.unit();
  // Cayley map to the upper half plane sending `fixed` to infinity.
  const auto to_uhp = [&](cplx z) { return cplx{0.0, 1.0} * (f + z) / (f - z); };
  const double tau = (to_uhp(dst.unit()) - to_uhp(src.unit())).real();
  const Mat2 c{cplx{0.0, 1.0}, cplx{0.0, 1.0} * f, -1.0, f};
  const Mat2 cinv{f, -cplx{0.0, 1.0} * f, 1.0, cplx{0.0, 1.0}};
  const Mat2 shift{1.0, tau, 0.0, 1.0};
  return {from_matrix(mul(cinv, mul(shift, c)), false), VerticalMap{}};
}

}  // namespace hsurf
