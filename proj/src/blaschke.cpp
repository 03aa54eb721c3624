#include "realdyn/blaschke.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace realdyn {

namespace {

// exact Gaussian rational, just enough for the Cayley algebra
struct GaussQ {
  Rat re = 0, im = 0;
  GaussQ() = default;
  GaussQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  static GaussQ unit_i() { return GaussQ(Rat(0), Rat(1)); }
  GaussQ conj() const { return GaussQ(re, -im); }
  GaussQ operator+(const GaussQ& o) const { return GaussQ(re + o.re, im + o.im); }
  GaussQ operator-(const GaussQ& o) const { return GaussQ(re - o.re, im - o.im); }
  GaussQ operator-() const { return GaussQ(-re, -im); }
  GaussQ operator*(const GaussQ& o) const {
    return GaussQ(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  bool is_real() const { return im == 0; }
};

template <typename C>
struct PolyC {
  std::vector<C> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  PolyC operator+(const PolyC& o) const {
    PolyC r;
    r.c.resize(std::max(c.size(), o.c.size()), C{});
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
    return r;
  }
  PolyC operator-(const PolyC& o) const {
    PolyC r;
    r.c.resize(std::max(c.size(), o.c.size()), C{});
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] - o.c[i];
    return r;
  }
  PolyC operator*(const PolyC& o) const {
    PolyC r;
    if (c.empty() || o.c.empty()) return r;
    r.c.resize(c.size() + o.c.size() - 1, C{});
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    return r;
  }
  PolyC scaled(const C& s) const {
    PolyC r = *this;
    for (auto& v : r.c) v = v * s;
    return r;
  }
};

using GPoly = PolyC<GaussQ>;
using CPoly = PolyC<std::complex<double>>;

GaussQ gq_from(const std::complex<double>& z) {
  return GaussQ(rat_from_double(z.real()), rat_from_double(z.imag()));
}

}  // namespace

std::complex<double> BlaschkeProduct::eval(std::complex<double> z) const {
  std::complex<double> w = std::exp(std::complex<double>(0, 2 * M_PI * rotation));
  for (const auto& a : inside) w *= (z - a) / (1.0 - std::conj(a) * z);
  for (const auto& b : outside) w *= (z - b) / (1.0 - std::conj(b) * z);
  if (reciprocal_post) w = 1.0 / w;
  return w;
}

BlaschkeProduct make_blaschke(std::vector<std::complex<double>> inside,
                              std::vector<std::complex<double>> outside,
                              double rotation_turns, bool reciprocal_post) {
  BlaschkeProduct B;
  B.inside = std::move(inside);
  B.outside = std::move(outside);
  B.rotation = rotation_turns - std::floor(rotation_turns);
  B.reciprocal_post = reciprocal_post;
  if (B.degree() < 1) throw UnsupportedConfiguration("empty Blaschke product");
  for (const auto& a : B.inside)
    if (std::abs(a) >= 1 - 1e-12)
      throw UnsupportedConfiguration("inside zero too close to the unit circle");
  for (const auto& b : B.outside)
    if (std::abs(b) <= 1 + 1e-12)
      throw UnsupportedConfiguration("outside zero too close to the unit circle");
  for (int k = 0; k < 100; ++k) {
    std::complex<double> z = std::exp(std::complex<double>(0, 2 * M_PI * (k + 0.3) / 100));
    if (std::fabs(std::abs(B.eval(z)) - 1.0) > 1e-10)
      throw UnsupportedConfiguration("evaluation leaves the unit circle");
  }
  return B;
}

int circle_degree_of(const BlaschkeProduct& B) {
  int s = 2 * static_cast<int>(B.inside.size()) - B.degree();
  return B.reciprocal_post ? -s : s;
}

double circle_multiplier(const BlaschkeProduct& B, double theta) {
  if (!B.outside.empty() || B.reciprocal_post)
    throw UnsupportedConfiguration("circle multiplier needs all zeros inside the disk");
  std::complex<double> w = std::exp(std::complex<double>(0, 2 * M_PI * theta));
  double s = 0;
  for (const auto& a : B.inside) s += (1.0 - std::norm(a)) / std::norm(w - a);
  return s;
}

// ---------------- Cayley conjugation ----------------

namespace {

// exact lane: rotation must be exactly 0 or 1/2
RealRationalMap cayley_exact(const BlaschkeProduct& B) {
  const int d = B.degree();
  const int rho = (B.rotation == 0.0) ? +1 : -1;
  GPoly N, D;
  N.c = {GaussQ(Rat(rho), Rat(0))};
  D.c = {GaussQ(Rat(1), Rat(0))};
  auto mul_factors = [&](const std::vector<std::complex<double>>& zeros) {
    for (const auto& z : zeros) {
      GaussQ a = gq_from(z);
      GPoly lin1;  // (x - a)
      lin1.c = {-a, GaussQ(Rat(1), Rat(0))};
      GPoly lin2;  // (1 - conj(a) x)
      lin2.c = {GaussQ(Rat(1), Rat(0)), -a.conj()};
      N = N * lin1;
      D = D * lin2;
    }
  };
  mul_factors(B.inside);
  mul_factors(B.outside);
  // substitute z = (x - i)/(x + i) and clear (x + i)^d:
  //   H~(x) = sum h_k (x - i)^k (x + i)^(d - k)
  GPoly xm, xp;
  xm.c = {GaussQ(Rat(0), Rat(-1)), GaussQ(Rat(1), Rat(0))};  // x - i
  xp.c = {GaussQ(Rat(0), Rat(1)), GaussQ(Rat(1), Rat(0))};   // x + i
  std::vector<GPoly> pm(d + 1), pp(d + 1);
  pm[0].c = {GaussQ(Rat(1), Rat(0))};
  pp[0].c = {GaussQ(Rat(1), Rat(0))};
  for (int i = 1; i <= d; ++i) {
    pm[i] = pm[i - 1] * xm;
    pp[i] = pp[i - 1] * xp;
  }
  auto tilde = [&](const GPoly& H) {
    GPoly acc;
    for (int k = 0; k <= H.degree(); ++k)
      acc = acc + (pm[k] * pp[d - k]).scaled(H.c[k]);
    return acc;
  };
  GPoly Nt = tilde(N), Dt = tilde(D);
  // f = (Dt + Nt) / (-i (Dt - Nt)); a rotation of -1 leaves both purely
  // imaginary, fixed by one extra factor of i
  GPoly A = Dt + Nt;
  GPoly Bq = (Dt - Nt).scaled(GaussQ(Rat(0), Rat(-1)));
  if (rho < 0) {
    A = A.scaled(GaussQ::unit_i());
    Bq = Bq.scaled(GaussQ::unit_i());
  }
  if (B.reciprocal_post) Bq = Bq.scaled(GaussQ(Rat(-1), Rat(0)));
  double residual = 0;
  for (const auto& v : A.c)
    residual = std::max(residual, std::fabs(v.im.get_d()) / (1 + std::fabs(v.re.get_d())));
  for (const auto& v : Bq.c)
    residual = std::max(residual, std::fabs(v.im.get_d()) / (1 + std::fabs(v.re.get_d())));
  if (residual > 0)
    throw NotRealizable("zero configuration is not conjugation-symmetric (residual " +
                        std::to_string(residual) + ")");
  QPoly P, Q;
  P.c.resize(A.c.size());
  for (size_t i = 0; i < A.c.size(); ++i) P.c[i] = A.c[i].re;
  Q.c.resize(Bq.c.size());
  for (size_t i = 0; i < Bq.c.size(); ++i) Q.c[i] = Bq.c[i].re;
  P.trim();
  Q.trim();
  return make_map(P, Q);
}

// double lane for irrational rotations
RealRationalMap cayley_double(const BlaschkeProduct& B) {
  const int d = B.degree();
  using CD = std::complex<double>;
  CPoly N, D;
  N.c = {std::exp(CD(0, 2 * M_PI * B.rotation))};
  D.c = {CD(1, 0)};
  auto mul_factors = [&](const std::vector<CD>& zeros) {
    for (const auto& a : zeros) {
      CPoly lin1, lin2;
      lin1.c = {-a, CD(1, 0)};
      lin2.c = {CD(1, 0), -std::conj(a)};
      N = N * lin1;
      D = D * lin2;
    }
  };
  mul_factors(B.inside);
  mul_factors(B.outside);
  CPoly xm, xp;
  xm.c = {CD(0, -1), CD(1, 0)};
  xp.c = {CD(0, 1), CD(1, 0)};
  std::vector<CPoly> pm(d + 1), pp(d + 1);
  pm[0].c = {CD(1, 0)};
  pp[0].c = {CD(1, 0)};
  for (int i = 1; i <= d; ++i) {
    pm[i] = pm[i - 1] * xm;
    pp[i] = pp[i - 1] * xp;
  }
  auto tilde = [&](const CPoly& H) {
    CPoly acc;
    for (int k = 0; k <= H.degree(); ++k)
      acc = acc + (pm[k] * pp[d - k]).scaled(H.c[k]);
    return acc;
  };
  CPoly Nt = tilde(N), Dt = tilde(D);
  CPoly A = Dt + Nt;
  CPoly Bq = (Dt - Nt).scaled(CD(0, -1));
  // absorb the rotation phase: multiplying by e^{i pi c} makes both real
  CD phase = std::exp(CD(0, M_PI * B.rotation));
  A = A.scaled(phase);
  Bq = Bq.scaled(phase);
  if (B.reciprocal_post) Bq = Bq.scaled(CD(-1, 0));
  double residual = 0;
  for (const auto& v : A.c)
    residual = std::max(residual, std::fabs(v.imag()) / (1 + std::fabs(v.real())));
  for (const auto& v : Bq.c)
    residual = std::max(residual, std::fabs(v.imag()) / (1 + std::fabs(v.real())));
  if (residual > 1e-9)
    throw NotRealizable("imaginary residue " + std::to_string(residual));
  QPoly P, Q;
  P.c.resize(A.c.size());
  for (size_t i = 0; i < A.c.size(); ++i) P.c[i] = rat_from_double(A.c[i].real());
  Q.c.resize(Bq.c.size());
  for (size_t i = 0; i < Bq.c.size(); ++i) Q.c[i] = rat_from_double(Bq.c[i].real());
  P.trim();
  Q.trim();
  return make_map(P, Q);
}

}  // namespace

RealRationalMap cayley(const BlaschkeProduct& B) {
  RealRationalMap f = (B.rotation == 0.0 || B.rotation == 0.5) ? cayley_exact(B)
                                                               : cayley_double(B);
  assert(f.degree() == B.degree());
  return f;
}

// ---------------- certificates and normal forms ----------------

MaximalEntropyCertificate cantor_certificate(const std::vector<std::complex<double>>& zeros,
                                             double theta0) {
  const int d = static_cast<int>(zeros.size());
  std::complex<double> w0 = std::exp(std::complex<double>(0, 2 * M_PI * theta0));
  double sum = 0;
  for (const auto& a : zeros) sum += (1.0 - std::norm(a)) / std::norm(w0 - a);
  if (sum >= 1.0)
    throw ConditionFails("multiplier sum " + std::to_string(sum) + " is not < 1");
  double c = (d + 1) * theta0;
  for (const auto& a : zeros) c -= std::arg(w0 - a) / M_PI;
  c -= std::floor(c);
  MaximalEntropyCertificate cert;
  cert.kind = MaximalEntropyCertificate::Kind::cantor_fixed_point;
  cert.theta0 = theta0;
  cert.multiplier = sum;
  cert.rotation = c;
  cert.product = make_blaschke(zeros, {}, c, false);
  cert.fixed_point_residual = std::abs(cert.product.eval(w0) - w0);
  if (cert.fixed_point_residual >= 1e-10)
    throw ConditionFails("fixed point residual " +
                         std::to_string(cert.fixed_point_residual));
  return cert;
}

BlaschkeProduct circle_julia_normal_form(const std::vector<std::complex<double>>& a,
                                         int orientation) {
  std::vector<std::complex<double>> zeros{std::complex<double>(0, 0)};
  zeros.insert(zeros.end(), a.begin(), a.end());
  return make_blaschke(zeros, {}, 0.0, orientation < 0);
}

ParabolicFormReport parabolic_full_form(const QPoly& P, const QPoly& Q, int eps) {
  assert(eps == 1 || eps == -1);
  if (Q.degree() < 1) throw DegreeConstraintViolated("deg Q must be at least 1");
  const int d = Q.degree() + 1;
  if (P.degree() > d - 1 || (eps == 1 && P.degree() >= d - 1))
    throw DegreeConstraintViolated(eps == 1 ? "need deg P < d-1 for eps = +1"
                                            : "need deg P <= d-1");
  if (qpoly_gcd(P, Q).degree() != 0)
    throw DegreeConstraintViolated("P and Q must be coprime");
  QPoly num = (QPoly::x() * Q + P) * Rat(eps);
  ParabolicFormReport rep;
  rep.map = make_map(num, Q);
  if (rep.map.degree() != d) {
    rep.valid = false;
    rep.detail = "degree dropped under reduction";
    return rep;
  }
  auto crit = critical_points_real(rep.map);
  if (!crit.empty()) {
    rep.valid = false;
    rep.detail = "real critical points present (" + std::to_string(crit.size()) + ")";
    return rep;
  }
  rep.valid = true;
  rep.detail = "parabolic fixed point at infinity, multiplier " + std::to_string(eps);
  return rep;
}

// ---------------- quotients ----------------

namespace {

// sym(H, G)(w) = H(z1) G(z2) + H(z2) G(z1) where z1 z2 = 1, z1 + z2 = w;
// built from the Chebyshev-style power sums p_m = z1^m + z2^m
QPoly sym_product(const QPoly& H, const QPoly& G) {
  int n = std::max(H.degree(), G.degree());
  std::vector<QPoly> p(n + 1);
  p[0] = QPoly::constant(Rat(2));
  if (n >= 1) p[1] = QPoly::x();
  for (int m = 2; m <= n; ++m) p[m] = QPoly::x() * p[m - 1] - p[m - 2];
  QPoly acc;
  for (int j = 0; j <= H.degree(); ++j) {
    if (H.coeff(j) == 0) continue;
    for (int k = 0; k <= G.degree(); ++k) {
      if (G.coeff(k) == 0) continue;
      acc = acc + p[std::abs(j - k)] * (H.coeff(j) * G.coeff(k));
    }
  }
  return acc;
}

double sampled_quotient_residual(const RealRationalMap& g, const RealRationalMap& f,
                                 QuotientMode mode) {
  double res = 0;
  const int n = 4 * g.degree() + 7;
  for (int i = 0; i < n; ++i) {
    double t = (i + 0.37) / n;
    std::complex<double> z = std::exp(std::complex<double>(0, 2 * M_PI * t));
    auto ev = [](const RealRationalMap& h, std::complex<double> x) {
      std::complex<double> pn = 0, pd = 0;
      for (auto it = h.num.fv.rbegin(); it != h.num.fv.rend(); ++it) pn = pn * x + *it;
      for (auto it = h.den.fv.rbegin(); it != h.den.fv.rend(); ++it) pd = pd * x + *it;
      return pn / pd;
    };
    std::complex<double> lhs, rhs;
    if (mode == QuotientMode::joukowsky) {
      std::complex<double> gz = ev(g, z);
      lhs = gz + 1.0 / gz;
      rhs = ev(f, z + 1.0 / z);
    } else {
      std::complex<double> gz = ev(g, z);
      lhs = gz * gz;
      rhs = ev(f, z * z);
    }
    res = std::max(res, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return res;
}

}  // namespace

QuotientResult joukowsky_quotient(const RealRationalMap& g, QuotientMode mode) {
  const QPoly &N = g.num.p, &D = g.den.p;
  const int d = g.degree();
  QuotientResult out;
  if (mode == QuotientMode::square) {
    // g must be odd: g(-z) = -g(z)
    if (!(N.flip() * D == -(N * D.flip())))
      throw CommutationFails("map is not odd; square quotient undefined");
    QPoly N2 = N * N, D2 = D * D;
    auto even_part = [](const QPoly& p) {
      QPoly r;
      r.c.resize(p.degree() / 2 + 1, Rat(0));
      for (int k = 0; k <= p.degree(); ++k) {
        if (k % 2 == 1) {
          assert(p.coeff(k) == 0);
          continue;
        }
        r.c[k / 2] = p.coeff(k);
      }
      r.trim();
      return r;
    };
    out.f = make_map(even_part(N2), even_part(D2));
    // exact recheck: f(z^2) D(z)^2 = N(z)^2 f.den(z^2)
    QPoly zsq({Rat(0), Rat(0), Rat(1)});
    if (!(out.f.num.p.compose(zsq) * D2 == N2 * out.f.den.p.compose(zsq)))
      throw EliminationDegenerate("square quotient failed the exact recheck");
  } else {
    // g must commute with the unit-circle inversion: g(1/z) g(z) = 1
    if (!(N.reverse(d) * N == D.reverse(d) * D))
      throw CommutationFails("g(1/z) g(z) = 1 fails as an exact identity");
    QPoly SD = sym_product(D, D);  // 2 D(z1) D(z2)
    QPoly SN = sym_product(N, D);  // N(z1) D(z2) + N(z2) D(z1)
    if (SD.is_zero()) throw EliminationDegenerate("vanishing symmetric denominator");
    out.f = make_map(SN * Rat(2), SD);
    // exact recheck of j o g = f o j via cross-multiplication
    QPoly lhs_num = N * N + D * D, lhs_den = N * D;
    QPoly wnum({Rat(1), Rat(0), Rat(1)});  // z^2 + 1 over z
    const int Df = out.f.degree();
    QPoly rn, rd;
    std::vector<QPoly> pw(Df + 1), pz(Df + 1);
    pw[0] = QPoly::constant(Rat(1));
    pz[0] = QPoly::constant(Rat(1));
    for (int i = 1; i <= Df; ++i) {
      pw[i] = pw[i - 1] * wnum;
      pz[i] = pz[i - 1] * QPoly::x();
    }
    for (int k = 0; k <= Df; ++k) {
      if (out.f.num.p.coeff(k) != 0) rn = rn + pw[k] * pz[Df - k] * out.f.num.p.coeff(k);
      if (out.f.den.p.coeff(k) != 0) rd = rd + pw[k] * pz[Df - k] * out.f.den.p.coeff(k);
    }
    if (!(lhs_num * rd == lhs_den * rn))
      throw EliminationDegenerate("joukowsky quotient failed the exact recheck");
  }
  if (out.f.degree() != d)
    throw EliminationDegenerate("quotient changed the degree");
  out.residual = sampled_quotient_residual(g, out.f, mode);
  return out;
}

// Quotient of the unit-circle model itself: the numerator/denominator of a
// conjugation-symmetric product with rotation +-1 are real polynomials, and
// the z -> 1/z quotient acts on that pair directly.
QuotientResult joukowsky_quotient(const BlaschkeProduct& g, QuotientMode mode) {
  if (g.rotation != 0.0 && g.rotation != 0.5)
    throw NotRealizable("rotation must be 0 or 1/2 for an exact quotient");
  const int rho = (g.rotation == 0.0) ? +1 : -1;
  GPoly N, D;
  N.c = {GaussQ(Rat(rho), Rat(0))};
  D.c = {GaussQ(Rat(1), Rat(0))};
  auto mul_factors = [&](const std::vector<std::complex<double>>& zeros) {
    for (const auto& z : zeros) {
      GaussQ a = gq_from(z);
      GPoly lin1, lin2;
      lin1.c = {-a, GaussQ(Rat(1), Rat(0))};
      lin2.c = {GaussQ(Rat(1), Rat(0)), -a.conj()};
      N = N * lin1;
      D = D * lin2;
    }
  };
  mul_factors(g.inside);
  mul_factors(g.outside);
  QPoly Np, Dp;
  Np.c.resize(N.c.size());
  Dp.c.resize(D.c.size());
  for (size_t i = 0; i < N.c.size(); ++i) {
    if (!N.c[i].is_real()) throw NotRealizable("zeros are not conjugation-symmetric");
    Np.c[i] = N.c[i].re;
  }
  for (size_t i = 0; i < D.c.size(); ++i) {
    if (!D.c[i].is_real()) throw NotRealizable("zeros are not conjugation-symmetric");
    Dp.c[i] = D.c[i].re;
  }
  Np.trim();
  Dp.trim();
  if (g.reciprocal_post) std::swap(Np, Dp);
  RealRationalMap pair = make_map(Np, Dp);
  return joukowsky_quotient(pair, mode);
}

}  // namespace realdyn
