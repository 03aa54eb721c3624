#ifndef REALDYN_BLASCHKE_HPP
#define REALDYN_BLASCHKE_HPP

#include <complex>
#include <string>
#include <vector>

#include "realdyn/realmap.hpp"

namespace realdyn {

// Unit-circle model e^{2 pi i c} prod (z-a_i)/(1-conj(a_i) z) prod (z-b_j)/(1-conj(b_j) z),
// |a_i| < 1, |b_j| > 1, optionally post-composed with z -> 1/z.
struct BlaschkeProduct {
  std::vector<std::complex<double>> inside;   // a_i
  std::vector<std::complex<double>> outside;  // b_j
  double rotation = 0.0;                      // c in turns, [0,1)
  bool reciprocal_post = false;

  int degree() const { return static_cast<int>(inside.size() + outside.size()); }
  std::complex<double> eval(std::complex<double> z) const;
};

// validates the invariants (|a|<1-1e-12, |b|>1+1e-12, modulus preserved on samples)
BlaschkeProduct make_blaschke(std::vector<std::complex<double>> inside,
                              std::vector<std::complex<double>> outside,
                              double rotation_turns, bool reciprocal_post = false);

// +-(2k - d); sign flipped by the reciprocal post-composition
int circle_degree_of(const BlaschkeProduct& B);

// |B'| on the unit circle at angle theta (turns); requires all zeros inside
double circle_multiplier(const BlaschkeProduct& B, double theta);

// Cayley conjugation to a real map. Exact when the rotation is 0 or 1/2 and
// the zero multisets are conjugation-symmetric; NotRealizable otherwise.
RealRationalMap cayley(const BlaschkeProduct& B);

struct MaximalEntropyCertificate {
  enum class Kind { cantor_fixed_point, circle_julia_hyperbolic, parabolic_full };
  Kind kind;
  double theta0 = 0;      // fixed-point angle witness (turns)
  double multiplier = 0;  // circle multiplier at the witness
  double rotation = 0;    // the constructed c
  BlaschkeProduct product;
  double fixed_point_residual = 0;
};

// Theorem-style hyperbolic Cantor certificate: the rotation c is chosen so
// that e^{2 pi i theta0} is an attracting fixed point on the circle.
MaximalEntropyCertificate cantor_certificate(
    const std::vector<std::complex<double>>& zeros, double theta0);

// z * prod (z - a_i)/(1 - conj(a_i) z), reciprocal-post for orientation -1
BlaschkeProduct circle_julia_normal_form(const std::vector<std::complex<double>>& a,
                                         int orientation);

struct ParabolicFormReport {
  RealRationalMap map;
  bool valid = false;
  std::string detail;
};

// f = eps (z + P/Q) with a parabolic fixed point at infinity
ParabolicFormReport parabolic_full_form(const QPoly& P, const QPoly& Q, int eps);

enum class QuotientMode { joukowsky, square };

struct QuotientResult {
  RealRationalMap f;
  double residual = 0;  // max sampled semiconjugacy defect
};

// j(g(z)) = f(j(z)) with j(z) = z + 1/z (mode joukowsky, needs g(1/z) g(z) = 1),
// or f(z^2) = g(z)^2 (mode square, needs g odd)
QuotientResult joukowsky_quotient(const RealRationalMap& g, QuotientMode mode);
QuotientResult joukowsky_quotient(const BlaschkeProduct& g, QuotientMode mode);

}  // namespace realdyn

#endif
