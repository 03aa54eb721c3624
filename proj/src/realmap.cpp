#include "realdyn/realmap.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <sstream>

#include "realdyn/numroots.hpp"

namespace realdyn {

// ---------------- MobiusReal ----------------

MobiusReal::MobiusReal(Rat a_, Rat b_, Rat c_, Rat d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  if (det() == 0) throw SingularMobius("ad - bc = 0");
}

MobiusReal MobiusReal::compose(const MobiusReal& o) const {
  return MobiusReal(a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d);
}

ExactPoint MobiusReal::apply(const ExactPoint& x) const {
  if (x.inf) {
    if (c == 0) return ExactPoint::infinity();
    return ExactPoint::at(a / c);
  }
  Rat denom = c * x.v + d;
  if (denom == 0) return ExactPoint::infinity();
  return ExactPoint::at((a * x.v + b) / denom);
}

CirclePoint MobiusReal::apply(const CirclePoint& x) const {
  double ad = a.get_d(), bd = b.get_d(), cd = c.get_d(), dd = d.get_d();
  double u, v;
  if (x.infinite) {
    u = 1;
    v = 0;
  } else if (std::fabs(x.x) <= 1) {
    u = x.x;
    v = 1;
  } else {
    u = 1;
    v = 1 / x.x;
  }
  double nu = ad * u + bd * v, de = cd * u + dd * v;
  if (de == 0) return CirclePoint::infinity();
  return CirclePoint::from_value(nu / de);
}

bool MobiusReal::is_identity() const { return b == 0 && c == 0 && a == d; }

std::string MobiusReal::str() const {
  std::ostringstream os;
  os << "(" << a.get_str() << "*x+" << b.get_str() << ")/(" << c.get_str()
     << "*x+" << d.get_str() << ")";
  return os.str();
}

// ---------------- construction ----------------

// joint normalization: integer coefficients, gcd of all = 1, den lead > 0
static void normalize_pair(QPoly& P, QPoly& Q) {
  Int den(1);
  for (const auto& v : P.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  for (const auto& v : Q.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  P = P * Rat(den);
  Q = Q * Rat(den);
  Int g(0);
  for (const auto& v : P.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num().get_mpz_t());
  for (const auto& v : Q.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num().get_mpz_t());
  if (g == 0) return;
  if (sgn(Q.lead()) < 0) g = -g;
  Rat inv = Rat(1) / Rat(g);
  P = P * inv;
  Q = Q * inv;
}

RealRationalMap make_map(QPoly P, QPoly Q) {
  if (Q.is_zero()) throw ZeroDenominator("Q is identically zero");
  if (P.is_zero()) throw DegeneratesToConstant("P is identically zero");
  QPoly g = qpoly_gcd(P, Q);
  if (g.degree() > 0) {
    P = qpoly_divexact(P, g);
    Q = qpoly_divexact(Q, g);
  }
  if (std::max(P.degree(), Q.degree()) == 0)
    throw DegeneratesToConstant("map reduces to a constant");
  normalize_pair(P, Q);
  return RealRationalMap(RealPolynomial(std::move(P)), RealPolynomial(std::move(Q)));
}

// ---------------- evaluation ----------------

ExactPoint RealRationalMap::value_at_infinity() const {
  int dp = num.degree(), dq = den.degree();
  if (dp > dq) return ExactPoint::infinity();
  if (dp < dq) return ExactPoint::at(Rat(0));
  return ExactPoint::at(num.p.lead() / den.p.lead());
}

QPoly RealRationalMap::wronskian() const {
  return num.p.derivative() * den.p - num.p * den.p.derivative();
}

// homogeneous evaluation of sum c[k] u^k v^(D-k)
static double eval_homog(const std::vector<double>& c, int D, double u, double v) {
  if (v == 1.0) {
    double r = 0;
    for (int k = D; k >= 0; --k)
      r = r * u + ((k < static_cast<int>(c.size())) ? c[k] : 0.0);
    return r;
  }
  double r = 0, vp = 1;
  for (int k = D; k >= 0; --k) {
    r = r * u + ((k < static_cast<int>(c.size())) ? c[k] : 0.0) * vp;
    vp *= v;
  }
  return r;
}

CirclePoint RealRationalMap::eval(const CirclePoint& x) const {
  double u, v;
  if (x.infinite) {
    u = 1;
    v = 0;
  } else if (std::fabs(x.x) <= 1) {
    u = x.x;
    v = 1;
  } else {
    u = 1;
    v = 1 / x.x;
  }
  const int D = degree();
  double pn = eval_homog(num.fv, D, u, v);
  double pd = eval_homog(den.fv, D, u, v);
  if (pd == 0 && pn == 0) throw IndeterminateForm("common root in evaluation");
  if (pd == 0) return CirclePoint::infinity();
  return CirclePoint::from_value(pn / pd);
}

ExactPoint RealRationalMap::eval_exact(const ExactPoint& x) const {
  if (x.inf) return value_at_infinity();
  Rat pn = num.p.eval(x.v), pd = den.p.eval(x.v);
  if (pd == 0) {
    if (pn == 0) throw IndeterminateForm("common root in exact evaluation");
    return ExactPoint::infinity();
  }
  return ExactPoint::at(pn / pd);
}

double RealRationalMap::derivative_at(double x) const {
  // f' = W / Q^2
  QPoly W = wronskian();
  double q = den.p.eval(x);
  return W.eval(x) / (q * q);
}

int RealRationalMap::local_degree_at(const ExactPoint& x) const {
  const int D = degree();
  if (!x.inf) {
    ExactPoint fx = eval_exact(x);
    QPoly R = fx.inf ? den.p : (num.p - den.p * fx.v);
    // multiplicity of x.v as a root of R
    int k = 0;
    QPoly lin({-x.v, Rat(1)});
    while (!R.is_zero() && R.eval(x.v) == 0) {
      R = qpoly_divexact(R, lin);
      ++k;
    }
    assert(k >= 1);
    return k;
  }
  // at infinity
  int dp = num.degree(), dq = den.degree();
  if (dp > dq) return dp - dq;
  QPoly Pr = num.p.reverse(D), Qr = den.p.reverse(D);
  QPoly T = (dp < dq) ? Pr : (Pr - Qr * (num.p.lead() / den.p.lead()));
  // order of vanishing at u = 0
  int k = 0;
  while (k <= T.degree() && T.c[k] == 0) ++k;
  assert(k >= 1);
  return k;
}

std::string RealRationalMap::str() const {
  auto poly_str = [](const QPoly& p) {
    if (p.is_zero()) return std::string("0");
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
      Rat ck = p.coeff(k);
      if (ck == 0) continue;
      if (!first) os << (sgn(ck) > 0 ? "+" : "-");
      else if (sgn(ck) < 0) os << "-";
      Rat ab = abs(ck);
      if (ab != 1 || k == 0) os << ab.get_str();
      if (k > 0) {
        if (ab != 1) os << "*";
        os << "z";
        if (k > 1) os << "^" << k;
      }
      first = false;
    }
    return os.str();
  };
  std::string n = poly_str(num.p);
  if (den.degree() == 0 && den.p.coeff(0) == 1) return n;
  return "(" + n + ")/(" + poly_str(den.p) + ")";
}

// ---------------- critical and fixed points ----------------

std::vector<std::pair<CirclePoint, int>> critical_points_real(const RealRationalMap& f) {
  std::vector<std::pair<CirclePoint, int>> out;
  QPoly W = f.wronskian();
  if (!W.is_zero()) {
    auto factors = squarefree_decomposition(W);
    for (size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() < 1) continue;
      for (double r : real_roots(factors[i].dcoeffs()))
        out.push_back({CirclePoint::from_value(polish_root_exact(factors[i], r)),
                       static_cast<int>(i + 1)});
    }
  }
  int kinf = f.local_degree_at(ExactPoint::infinity());
  if (kinf > 1) out.push_back({CirclePoint::infinity(), kinf - 1});
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first.angle < b.first.angle; });
  return out;
}

std::vector<std::pair<CirclePoint, double>> fixed_points_real(const RealRationalMap& f) {
  std::vector<std::pair<CirclePoint, double>> out;
  QPoly F = f.num.p - QPoly::x() * f.den.p;
  if (!F.is_zero() && F.degree() >= 1) {
    QPoly sf = squarefree_part(F);
    for (double r : real_roots(sf.dcoeffs())) {
      double rp = polish_root_exact(sf, r);
      out.push_back({CirclePoint::from_value(rp), f.derivative_at(rp)});
    }
  }
  int dp = f.num.degree(), dq = f.den.degree();
  if (dp > dq) {
    double mult = (dp == dq + 1) ? Rat(f.den.p.lead() / f.num.p.lead()).get_d() : 0.0;
    out.push_back({CirclePoint::infinity(), mult});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first.angle < b.first.angle; });
  return out;
}

// ---------------- conjugation / composition ----------------

// raw substitution f(m(x)): returns an unreduced pair with common weight (cx+d)^D
static std::pair<QPoly, QPoly> substitute_mobius(const RealRationalMap& f,
                                                 const MobiusReal& m) {
  const int D = f.degree();
  QPoly lin_num({m.b, m.a});  // a x + b
  QPoly lin_den({m.d, m.c});  // c x + d
  auto sub = [&](const QPoly& p) {
    QPoly acc;
    // sum p[k] (ax+b)^k (cx+d)^(D-k)
    std::vector<QPoly> pow_num(D + 1), pow_den(D + 1);
    pow_num[0] = QPoly::constant(Rat(1));
    pow_den[0] = QPoly::constant(Rat(1));
    for (int i = 1; i <= D; ++i) {
      pow_num[i] = pow_num[i - 1] * lin_num;
      pow_den[i] = pow_den[i - 1] * lin_den;
    }
    for (int k = 0; k <= p.degree(); ++k) {
      if (p.coeff(k) == 0) continue;
      acc = acc + pow_num[k] * pow_den[D - k] * p.coeff(k);
    }
    return acc;
  };
  return {sub(f.num.p), sub(f.den.p)};
}

RealRationalMap conjugate(const RealRationalMap& f, const MobiusReal& m) {
  if (m.det() == 0) throw SingularMobius();
  MobiusReal mi = m.inverse();
  auto [A, B] = substitute_mobius(f, mi);  // f(m^-1(x)) = A/B
  QPoly P = A * m.a + B * m.b;
  QPoly Q = A * m.c + B * m.d;
  RealRationalMap g = make_map(P, Q);
  assert(g.degree() == f.degree());
  return g;
}

RealRationalMap compose(const RealRationalMap& f, const RealRationalMap& g) {
  const int D = f.degree();
  const QPoly &GN = g.num.p, &GD = g.den.p;
  std::vector<QPoly> pn(D + 1), pd(D + 1);
  pn[0] = QPoly::constant(Rat(1));
  pd[0] = QPoly::constant(Rat(1));
  for (int i = 1; i <= D; ++i) {
    pn[i] = pn[i - 1] * GN;
    pd[i] = pd[i - 1] * GD;
  }
  QPoly P, Q;
  for (int k = 0; k <= D; ++k) {
    if (k <= f.num.degree() && f.num.p.coeff(k) != 0)
      P = P + pn[k] * pd[D - k] * f.num.p.coeff(k);
    if (k <= f.den.degree() && f.den.p.coeff(k) != 0)
      Q = Q + pn[k] * pd[D - k] * f.den.p.coeff(k);
  }
  RealRationalMap h = make_map(P, Q);
  assert(h.degree() == f.degree() * g.degree());
  return h;
}

// ---------------- symmetries ----------------

bool commutes_with(const RealRationalMap& f, const MobiusReal& s) {
  // f(s(x)) = s(f(x)) as a literal identity of rational functions:
  // cross-multiplied with the raw (unreduced) composite pairs.
  auto [A, B] = substitute_mobius(f, s);  // f o s = A/B
  QPoly L = f.num.p * s.a + f.den.p * s.b;  // s o f = L/M
  QPoly M = f.num.p * s.c + f.den.p * s.d;
  return A * M == B * L;
}

bool commutes_with(const RealRationalMap& f, AntipodalMarker) {
  // for real f the antipodal commutation reduces to f(-1/x) * f(x) = -1
  MobiusReal inv(Rat(0), Rat(-1), Rat(1), Rat(0));  // x -> -1/x
  auto [A, B] = substitute_mobius(f, inv);
  return A * f.num.p == -(B * f.den.p);
}

// continued-fraction rational approximation with bounded denominator
std::optional<Rat> rationalize(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  double a = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(a);
    if (fl > 1e17 || fl < -1e17) break;
    long ai = static_cast<long>(fl);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::fabs(approx - x) <= tol * (1 + std::fabs(x))) {
      Rat r{Int(p1), Int(q1)};
      r.canonicalize();
      return r;
    }
    double frac = a - fl;
    if (frac < 1e-15) break;
    a = 1.0 / frac;
  }
  return std::nullopt;
}

std::vector<MobiusReal> candidate_symmetries(const RealRationalMap& f) {
  std::vector<MobiusReal> candidates;
  candidates.push_back(MobiusReal(Rat(-1), Rat(0), Rat(0), Rat(1)));  // -x
  candidates.push_back(MobiusReal(Rat(0), Rat(1), Rat(1), Rat(0)));   // 1/x
  candidates.push_back(MobiusReal(Rat(0), Rat(-1), Rat(1), Rat(0)));  // -1/x
  // scalings from ratios of real fixed points (rationalized, then verified exactly)
  auto fixed = fixed_points_real(f);
  std::vector<double> vals;
  for (const auto& [p, mult] : fixed) {
    (void)mult;
    if (!p.infinite && std::fabs(p.x) > 1e-9) vals.push_back(p.x);
  }
  for (double xi : vals)
    for (double xj : vals) {
      double k = xi / xj;
      if (std::fabs(k - 1) < 1e-12) continue;
      if (auto kr = rationalize(k)) {
        if (*kr == 0 || *kr == 1) continue;
        candidates.push_back(MobiusReal::scaling(*kr));
      }
    }
  auto normal_form = [](const MobiusReal& m) {
    Rat pivot = m.a != 0 ? m.a : (m.b != 0 ? m.b : (m.c != 0 ? m.c : m.d));
    return std::array<Rat, 4>{m.a / pivot, m.b / pivot, m.c / pivot, m.d / pivot};
  };
  std::vector<MobiusReal> out;
  std::vector<std::array<Rat, 4>> seen;
  for (const auto& m : candidates) {
    auto nf = normal_form(m);
    if (std::find(seen.begin(), seen.end(), nf) != seen.end()) continue;
    seen.push_back(nf);
    if (commutes_with(f, m)) out.push_back(m);
  }
  return out;
}

}  // namespace realdyn
