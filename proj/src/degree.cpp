#include "realdyn/degree.hpp"

#include <cassert>
#include <cmath>
#include <random>

namespace realdyn {

// signed preimage count over a regular value y:
//   s = sum over real roots x of P - yQ of sign f'(x)
// Using W = P'Q - PQ' one has W = (P - yQ)' Q - (P - yQ) Q', so at a root of
// R = P - yQ the sign of f' equals the sign of W; y regular and R of full
// degree make every root simple, real-isolatable, and off the poles.
int topological_degree(const RealRationalMap& f, std::uint64_t seed) {
  const int d = f.degree();
  if (d < 1) throw DegenerateMap("constant map");
  const QPoly W = f.wronskian();
  if (W.is_zero()) throw DegenerateMap("degenerate derivative");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> num(-112, 112);

  for (int attempt = 0; attempt < 32; ++attempt) {
    Rat y(num(rng), 16);
    y.canonicalize();
    QPoly R = f.num.p - f.den.p * y;
    if (R.degree() != d) continue;            // y hits f(oo) or degree drops
    if (qpoly_gcd(R, W).degree() != 0) continue;  // y is a critical value
    SturmChain wchain(W);
    int s = 0;
    bool ok = true;
    for (auto [a, b] : isolate_real_roots(R)) {
      if (R.eval(b) == 0) {  // root sits exactly on the right endpoint
        int sw = sgn(W.eval(b));
        assert(sw != 0);
        s += sw;
        continue;
      }
      SturmChain rchain(R);
      int guard = 0;
      while (true) {
        if (++guard > 200) { ok = false; break; }
        int wa = sgn(W.eval(a)), wb = sgn(W.eval(b));
        if (wa != 0 && wa == wb && wchain.count_roots(a, b) == 0) {
          s += wa;
          break;
        }
        Rat mid = (a + b) / 2;
        if (rchain.count_roots(a, mid) == 1)
          b = mid;
        else
          a = mid;
      }
      if (!ok) break;
    }
    if (ok) return s;
  }
  throw DegenerateMap("no regular value found after 32 attempts");
}

// Degree integral int f'(x) dx / (pi (1 + f^2)).  In homogeneous form the
// integrand is W_h(u,v) / (P_h^2 + Q_h^2) with (u,v) = (-cos(pi t), sin(pi t)),
// smooth on the whole circle, so the midpoint rule converges spectrally.
double quadrature_degree(const RealRationalMap& f, int n_points) {
  assert(n_points >= 64);
  const int D = f.degree();
  const auto wc = f.wronskian().dcoeffs();
  const auto& pc = f.num.fv;
  const auto& qc = f.den.fv;
  auto homog = [](const std::vector<double>& c, int deg, double u, double v) {
    double r = 0, vp = 1;
    for (int k = deg; k >= 0; --k) {
      r = r * u + ((k < static_cast<int>(c.size())) ? c[k] : 0.0) * vp;
      vp *= v;
    }
    return r;
  };
  double acc = 0;
  for (int i = 0; i < n_points; ++i) {
    double t = (i + 0.5) / n_points;
    double u = -std::cos(M_PI * t), v = std::sin(M_PI * t);
    double w = homog(wc, 2 * D - 2, u, v);
    double p = homog(pc, D, u, v), q = homog(qc, D, u, v);
    acc += w / (p * p + q * q);
  }
  return acc / n_points;
}

ComponentLabel component_label(const RealRationalMap& f, std::uint64_t seed) {
  const int d = f.degree();
  assert(d >= 2);
  int s = topological_degree(f, seed);
  if (std::abs(s) > d || ((d - s) % 2 != 0))
    throw ParityViolation("degree " + std::to_string(s) + " of a degree-" +
                          std::to_string(d) + " map");
  double q = quadrature_degree(f, 4096);
  if (std::fabs(q - s) >= 0.5)
    throw ParityViolation("quadrature cross-check " + std::to_string(q) +
                          " vs exact " + std::to_string(s));
  return ComponentLabel{d, s};
}

}  // namespace realdyn
