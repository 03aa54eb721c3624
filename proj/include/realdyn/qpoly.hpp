#ifndef REALDYN_QPOLY_HPP
#define REALDYN_QPOLY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "realdyn/rational.hpp"

namespace realdyn {

// Dense integer polynomial, c[k] is the coefficient of t^k.
// Used where exactness is the point: kneading determinants, Sturm chains.
class ZPoly {
 public:
  std::vector<Int> c;

  ZPoly() = default;
  explicit ZPoly(std::vector<Int> cs) : c(std::move(cs)) { trim(); }
  static ZPoly constant(long v);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Int& lead() const { return c.back(); }
  void trim();

  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;
  double eval(double x) const;

  ZPoly operator-() const;
  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  bool operator==(const ZPoly& o) const { return c == o.c; }

  // multiply by m * t^k
  ZPoly shift_scale(const Int& m, int k) const;

  Int content() const;          // gcd of coefficients, sign of lead
  ZPoly primitive_part() const; // this / content
  ZPoly derivative() const;
};

// gcd of primitive parts (primitive pseudo-remainder sequence).
ZPoly zpoly_gcd(ZPoly a, ZPoly b);
// exact division; aborts if not divisible (internal use only)
ZPoly zpoly_divexact(const ZPoly& a, const ZPoly& b);

// Dense rational polynomial, c[k] is the coefficient of x^k.
class QPoly {
 public:
  std::vector<Rat> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rat> cs) : c(std::move(cs)) { trim(); }
  QPoly(std::initializer_list<Rat> cs) : c(cs) { trim(); }
  static QPoly constant(const Rat& v);
  static QPoly x();  // the monomial x

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Rat& lead() const { return c.back(); }
  Rat coeff(int k) const { return (k >= 0 && k < (int)c.size()) ? c[k] : Rat(0); }
  void trim();

  Rat eval(const Rat& x) const;
  double eval(double x) const;
  std::vector<double> dcoeffs() const;

  QPoly operator-() const;
  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rat& s) const;
  bool operator==(const QPoly& o) const { return c == o.c; }

  QPoly derivative() const;
  // substitute x -> g(x)
  QPoly compose(const QPoly& g) const;
  // t^n * p(1/t) for n >= degree
  QPoly reverse(int n) const;
  // p(-x)
  QPoly flip() const;

  // content (as positive rational) and primitive integer model
  ZPoly primitive_z(Rat* content = nullptr) const;
  static QPoly from_z(const ZPoly& z);
};

std::pair<QPoly, QPoly> qpoly_divrem(const QPoly& a, const QPoly& b);
QPoly qpoly_gcd(const QPoly& a, const QPoly& b);  // monic gcd
QPoly qpoly_divexact(const QPoly& a, const QPoly& b);

// True resultant Res_x(a, b), exact.
Rat resultant(const QPoly& a, const QPoly& b);

// Yun square-free decomposition: returns g_1, g_2, ... with
// p = lead * prod g_i^i and the g_i square-free and pairwise coprime.
std::vector<QPoly> squarefree_decomposition(const QPoly& p);
QPoly squarefree_part(const QPoly& p);

// ---- Sturm machinery (exact real-root counting over Q) ----

struct SturmChain {
  std::vector<QPoly> seq;
  explicit SturmChain(const QPoly& p);  // of the square-free part of p
  int sign_changes_at(const Rat& x) const;
  int sign_changes_at_minus_inf() const;
  int sign_changes_at_plus_inf() const;
  // number of distinct real roots in (a, b]
  int count_roots(const Rat& a, const Rat& b) const;
  int count_real_roots() const;
};

// Isolating intervals (lo, hi] for every distinct real root of p.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& p);

// Shrink an isolating interval of p (square-free) until hi - lo < width.
std::pair<Rat, Rat> refine_root(const QPoly& p, Rat lo, Rat hi, const Rat& width);

// Smallest distinct real root of p in the open interval (a, b), isolated and
// refined to the given width; nullopt if there is none.
std::optional<std::pair<Rat, Rat>> smallest_root_in(const QPoly& p, const Rat& a,
                                                    const Rat& b, const Rat& width);

// Newton polish of a simple root with the residual evaluated exactly; plain
// double Horner cancels catastrophically on ill-conditioned coefficients.
double polish_root_exact(const QPoly& p, double x0, int iters = 3);

}  // namespace realdyn

#endif
