#ifndef REALDYN_REALMAP_HPP
#define REALDYN_REALMAP_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "realdyn/circle.hpp"
#include "realdyn/errors.hpp"
#include "realdyn/qpoly.hpp"

namespace realdyn {

// A point of the circle with exact coordinates: a rational number or infinity.
struct ExactPoint {
  bool inf = false;
  Rat v = 0;
  static ExactPoint infinity() { return {true, Rat(0)}; }
  static ExactPoint at(const Rat& x) { return {false, x}; }
  bool operator==(const ExactPoint& o) const {
    return inf == o.inf && (inf || v == o.v);
  }
};

// Exact polynomial with a cached double view of the coefficients.
struct RealPolynomial {
  QPoly p;
  std::vector<double> fv;
  RealPolynomial() = default;
  explicit RealPolynomial(QPoly q) : p(std::move(q)), fv(p.dcoeffs()) {}
  int degree() const { return p.degree(); }
};

// Real Möbius transformation x -> (a x + b) / (c x + d), exact entries.
struct MobiusReal {
  Rat a = 1, b = 0, c = 0, d = 1;
  MobiusReal() = default;
  MobiusReal(Rat a_, Rat b_, Rat c_, Rat d_);
  static MobiusReal identity() { return MobiusReal(); }
  static MobiusReal scaling(const Rat& k) { return MobiusReal(k, 0, 0, 1); }
  Rat det() const { return a * d - b * c; }
  MobiusReal inverse() const { return MobiusReal(d, -b, -c, a); }
  MobiusReal compose(const MobiusReal& o) const;  // this after o
  ExactPoint apply(const ExactPoint& x) const;
  CirclePoint apply(const CirclePoint& x) const;
  bool is_identity() const;
  std::string str() const;
};

// Degree-d rational self-map of the real circle; numerator/denominator are
// exact, coprime, and jointly normalized (integer primitive, den lead > 0).
class RealRationalMap {
 public:
  RealPolynomial num, den;
  RealRationalMap() = default;
  RealRationalMap(RealPolynomial n, RealPolynomial d)
      : num(std::move(n)), den(std::move(d)) {}

  int degree() const { return std::max(num.degree(), den.degree()); }
  ExactPoint value_at_infinity() const;
  QPoly wronskian() const;  // P'Q - PQ'

  CirclePoint eval(const CirclePoint& x) const;
  ExactPoint eval_exact(const ExactPoint& x) const;
  double derivative_at(double x) const;  // f'(x), finite x away from poles

  int local_degree_at(const ExactPoint& x) const;

  std::string str() const;
  bool operator==(const RealRationalMap& o) const {
    return num.p == o.num.p && den.p == o.den.p;
  }
};

// gcd-reduced, normalized construction (ZeroDenominator / DegeneratesToConstant)
RealRationalMap make_map(QPoly P, QPoly Q);

// critical points on the circle, ordered by angle; multiplicity = local degree - 1
std::vector<std::pair<CirclePoint, int>> critical_points_real(const RealRationalMap& f);

// real fixed points with multipliers; includes infinity when it is fixed
std::vector<std::pair<CirclePoint, double>> fixed_points_real(const RealRationalMap& f);

RealRationalMap conjugate(const RealRationalMap& f, const MobiusReal& m);
RealRationalMap compose(const RealRationalMap& f, const RealRationalMap& g);  // f o g

// marker for the antiholomorphic involution z -> -1/conj(z)
struct AntipodalMarker {};

bool commutes_with(const RealRationalMap& f, const MobiusReal& s);
bool commutes_with(const RealRationalMap& f, AntipodalMarker);

// Sound but deliberately incomplete candidate search (see module docs).
std::vector<MobiusReal> candidate_symmetries(const RealRationalMap& f);

// continued-fraction rational approximation; nullopt if nothing close enough
std::optional<Rat> rationalize(double x, long max_den = 1 << 20, double tol = 1e-9);

}  // namespace realdyn

#endif
