#include "realdyn/kneading.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

#include "realdyn/numroots.hpp"

namespace realdyn {

RatFun RatFun::reduced() const {
  if (num.is_zero()) return RatFun(ZPoly(), ZPoly::constant(1));
  ZPoly g = zpoly_gcd(num, den);
  ZPoly n = zpoly_divexact(num, g), d = zpoly_divexact(den, g);
  Int cn = n.content(), cd = d.content();
  Int cg;
  mpz_gcd(cg.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (sgn(cd) < 0) cg = -cg;  // keep den(0)-side positive
  if (cg != 1 && cg != 0) {
    for (auto& v : n.c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), cg.get_mpz_t());
    for (auto& v : d.c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), cg.get_mpz_t());
  }
  return RatFun(std::move(n), std::move(d));
}

// ---------------- interval lift ----------------

// exact acceptance test for a finite cut point
static bool valid_finite_cut(const RealRationalMap& f, const Rat& chi, bool require_fixed) {
  const int d = f.degree();
  if (f.wronskian().eval(chi) == 0) return false;  // critical, possibly a fold
  QPoly R = f.num.p - f.den.p * chi;
  if (R.is_zero()) return false;
  if (require_fixed) {
    if (R.eval(chi) != 0) return false;            // not fixed
    if (R.degree() != d) return false;             // infinity is another preimage
    QPoly lin({-chi, Rat(1)});
    while (!R.is_zero() && R.eval(chi) == 0) R = qpoly_divexact(R, lin);
    if (R.degree() >= 1 && SturmChain(R).count_real_roots() > 0) return false;
  } else {
    // chi must be off the image: no real preimage, finite or through infinity
    if (R.degree() != d) return false;  // leading cancellation <=> f(oo) = chi
    if (SturmChain(R).count_real_roots() > 0) return false;
  }
  return true;
}

static bool infinity_cut_ok(const RealRationalMap& f, bool as_fixed) {
  // non-turning at infinity
  if (f.local_degree_at(ExactPoint::infinity()) % 2 == 0) return false;
  const int dp = f.num.degree(), dq = f.den.degree();
  if (as_fixed) {
    if (dp <= dq) return false;  // not fixed
  } else {
    if (dp > dq) return false;  // infinity is its own preimage
  }
  // real preimages of infinity besides possibly infinity itself
  if (f.den.degree() >= 1 && SturmChain(f.den.p).count_real_roots() > 0) return false;
  return true;
}

std::optional<IntervalLift> make_interval_lift(const RealRationalMap& f) {
  auto T = turning_points(f);
  if (T.empty()) return std::nullopt;

  std::optional<MobiusReal> chart;
  // 1) cut at infinity when it works (covers every real polynomial)
  if (infinity_cut_ok(f, /*as_fixed=*/true) || infinity_cut_ok(f, /*as_fixed=*/false)) {
    chart = MobiusReal::identity();
  }
  // 2) cut in a gap of the image arc (non-surjective restriction)
  if (!chart) {
    std::vector<double> vals;
    for (const auto& c : T) vals.push_back(f.eval(c).angle);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    const size_t nv = vals.size();
    for (size_t i = 0; i < nv && !chart; ++i) {
      double lo = vals[i];
      double hi = (i + 1 < nv) ? vals[i + 1] : vals[0] + 1.0;
      if (hi - lo < 1e-7) continue;
      for (double frac : {0.5, 0.25, 0.75, 0.4, 0.6}) {
        double t = lo + (hi - lo) * frac;
        if (t >= 1.0) t -= 1.0;
        if (t == 0.0 || chart_dist(t, 0.0) < 1e-9) continue;  // infinity handled above
        double xd = value_of_angle(t);
        auto chi = rationalize(xd, 1 << 16, 1e-3);  // anywhere inside the gap works
        if (!chi) continue;
        if (chart_dist(angle_of_value(chi->get_d()), t) > (hi - lo) / 2.5) continue;
        if (valid_finite_cut(f, *chi, /*require_fixed=*/false)) {
          chart = MobiusReal(Rat(0), Rat(1), Rat(1), -*chi);  // x -> 1/(x - chi)
          break;
        }
      }
    }
  }
  // 3) cut at an exact rational fixed point whose only real preimage is itself
  if (!chart) {
    for (const auto& [p, mult] : fixed_points_real(f)) {
      (void)mult;
      if (p.infinite) continue;
      auto chi = rationalize(p.x, 1 << 24, 1e-7);
      if (!chi) continue;
      if (f.num.p.eval(*chi) != *chi * f.den.p.eval(*chi)) continue;  // not exactly fixed
      if (valid_finite_cut(f, *chi, /*require_fixed=*/true)) {
        chart = MobiusReal(Rat(0), Rat(1), Rat(1), -*chi);
        break;
      }
    }
  }
  if (!chart) return std::nullopt;

  IntervalLift lift;
  lift.f = f;
  lift.chart = *chart;
  lift.cut_at_infinity = chart->is_identity();
  lift.cut_angle =
      lift.cut_at_infinity ? 0.0 : angle_of_value(Rat(-chart->d / chart->c).get_d());

  auto to_lift = [&](double angle) {
    double u = angle - lift.cut_angle;
    u -= std::floor(u);
    return u;
  };
  std::vector<std::pair<double, CirclePoint>> turn;
  for (const CirclePoint& c : T) turn.push_back({to_lift(c.angle), c});
  std::sort(turn.begin(), turn.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [u, c] : turn) {
    assert(u > 0 && "cut point collides with a turning point");
    lift.turning.push_back(u);
    lift.turning_points.push_back(c);
  }
  // lap orientations: the angle-chart derivative is a positive multiple of the
  // Wronskian, so an exact sign of W at a rational interior sample decides
  const int l = static_cast<int>(lift.turning.size()) + 1;
  const QPoly W = f.wronskian();
  lift.eps.assign(l, 0);
  for (int j = 0; j < l; ++j) {
    double lo = (j == 0) ? 0.0 : lift.turning[j - 1];
    double hi = (j == l - 1) ? 1.0 : lift.turning[j];
    int s = 0;
    for (double frac : {0.5, 0.25, 0.75, 0.37, 0.63}) {
      double t = lift.cut_angle + lo + (hi - lo) * frac;
      t -= std::floor(t);
      if (chart_dist(t, 0.0) < 1e-12) continue;  // sample would sit at infinity
      Rat x = rat_from_double(value_of_angle(t));
      s = sgn(W.eval(x));
      if (s != 0) break;
    }
    assert(s != 0 && "no usable orientation sample in a lap");
    lift.eps[j] = s;
  }
  for (int j = 0; j + 1 < l; ++j)
    assert(lift.eps[j] == -lift.eps[j + 1] && "orientations must alternate at folds");
  return lift;
}

// ---------------- symbol machine ----------------

namespace {

// Symbol machine in the circle chart: orbit points are plain doubles (signed
// infinities legal), addressing happens in lift coordinates u = angle - cut.
struct OrbitMachine {
  const IntervalLift& lift;
  std::vector<double> wc, pc, qc;
  int D;
  explicit OrbitMachine(const IntervalLift& l)
      : lift(l),
        wc(l.f.wronskian().dcoeffs()),
        pc(l.f.num.fv),
        qc(l.f.den.fv),
        D(l.f.degree()) {}

  double ucoord(double x) const {
    if (std::isinf(x) && lift.cut_at_infinity) return x > 0 ? 1.0 : 0.0;
    double u = angle_of_value(x) - lift.cut_angle;
    u -= std::floor(u);
    return u;
  }

  bool hits_turning(double x, int i) const {
    const CirclePoint& t = lift.turning_points[i];
    if (t.infinite) return std::isinf(x);
    if (std::isinf(x)) return false;
    return std::fabs(x - t.x) <= 1e-15 * (1.0 + std::fabs(t.x));
  }

  // lap index 1..l of a one-sided point (x, side)
  int address(double x, int side) const {
    for (size_t i = 0; i < lift.turning.size(); ++i)
      if (hits_turning(x, static_cast<int>(i)))
        return side > 0 ? static_cast<int>(i) + 2 : static_cast<int>(i) + 1;
    double u = ucoord(x);
    size_t j = std::upper_bound(lift.turning.begin(), lift.turning.end(), u) -
               lift.turning.begin();
    return static_cast<int>(j) + 1;
  }

  double step(double x) const {
    const RealRationalMap& f = lift.f;
    const int dp = f.num.degree(), dq = f.den.degree();
    if (std::isinf(x)) {
      if (dp > dq) {
        double ratio = Rat(f.num.p.lead() / f.den.p.lead()).get_d();
        double s = ((x > 0) || ((dp - dq) % 2 == 0)) ? ratio : -ratio;
        return s > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
      }
      if (dp < dq) return 0.0;
      return Rat(f.num.p.lead() / f.den.p.lead()).get_d();
    }
    double u, v;
    if (std::fabs(x) <= 1) {
      u = x;
      v = 1;
    } else {
      u = 1;
      v = 1 / x;
    }
    auto homog = [&](const std::vector<double>& c, int deg) {
      double r = 0, vp = 1;
      for (int k = deg; k >= 0; --k) {
        r = r * u + ((k < (int)c.size()) ? c[k] : 0.0) * vp;
        vp *= v;
      }
      return r;
    };
    double pn = homog(pc, D), pd = homog(qc, D);
    if (pd == 0 && pn == 0) throw IndeterminateForm("common zero along an orbit");
    // pd may be a signed IEEE zero (pole hit, or underflow of an escaping
    // orbit); the signed division delivers the correctly-signed infinity
    return pn / pd;
  }

  // |d angle(f(x)) / d angle(x)|, the chart-free cycle multiplier factor
  double deriv_abs(double x) const {
    double u, v;
    if (std::isinf(x)) {
      u = x > 0 ? 1 : -1;
      v = 0;
    } else {
      double h = std::hypot(x, 1.0);
      u = x / h;
      v = 1 / h;
    }
    auto homog = [&](const std::vector<double>& c, int deg) {
      double r = 0, vp = 1;
      for (int k = deg; k >= 0; --k) {
        r = r * u + ((k < (int)c.size()) ? c[k] : 0.0) * vp;
        vp *= v;
      }
      return r;
    };
    double w = homog(wc, 2 * D - 2);
    double pn = homog(pc, D), pd = homog(qc, D);
    return std::fabs(w) / (pn * pn + pd * pd);
  }
};

}  // namespace

EventuallyPeriodicSeq kneading_coordinates(const IntervalLift& lift, int turning_index,
                                           int side, const KneadingOptions& opts) {
  assert(turning_index >= 0 &&
         turning_index < static_cast<int>(lift.turning.size()));
  assert(side == +1 || side == -1);
  OrbitMachine mach(lift);

  std::vector<double> xs, us;
  std::vector<int> laps;
  std::vector<int> taus;

  const CirclePoint& c0 = lift.turning_points[turning_index];
  double x = c0.infinite ? std::numeric_limits<double>::infinity() : c0.x;
  int sd = side;
  int tau = +1;
  int lap = side > 0 ? turning_index + 2 : turning_index + 1;

  long kappa = -1, period = -1;
  const double rec_tol = 1e-10;

  for (long k = 0;; ++k) {
    xs.push_back(x);
    us.push_back(mach.ucoord(x));
    laps.push_back(lap);
    taus.push_back(tau);
    if (k >= opts.max_iter || k > opts.max_symbols)
      throw NotEventuallyAttracted("no recurrence within iteration budget");

    // look for a recurrence u_k ~ u_{k-p}; confirm one more period by symbols
    // before committing (near-misses at repelling passages must not stick)
    if (k >= 1) {
      long pmax = std::min<long>(opts.period_cap, k);
      for (long p = 1; p <= pmax; ++p) {
        double sep = std::fabs(us[k] - us[k - p]);
        if (sep >= rec_tol) continue;
        if (laps[k] != laps[k - p]) continue;
        // attracted (multiplier at most ~1) or landed exactly on a cycle
        double lam = 1.0;
        for (long i = k - p; i < k; ++i) lam *= mach.deriv_abs(xs[i]);
        if (!(lam <= 1.0 + 1e-8 || sep < 1e-12)) break;
        bool confirmed = true;
        {
          double xcur = xs[k];
          int scur = sd, lcur = laps[k];
          for (long i = 0; i < p; ++i) {
            if (lcur != laps[k - p + i]) {
              confirmed = false;
              break;
            }
            int e = lift.eps[lcur - 1];
            xcur = mach.step(xcur);
            scur *= e;
            lcur = mach.address(xcur, scur);
          }
        }
        if (confirmed) {
          kappa = k - p;
          period = p;
        }
        break;
      }
      if (period > 0) break;
    }

    // advance
    int e = lift.eps[lap - 1];
    x = mach.step(x);
    sd *= e;
    tau *= e;
    lap = mach.address(x, sd);
  }
  // primitive period: a divisor q works iff the cyclic shift by q fixes the window
  for (long q = 1; q < period; ++q) {
    if (period % q != 0) continue;
    bool ok = true;
    for (long i = 0; i < period && ok; ++i) {
      long a = kappa + i, b = kappa + ((i + q) % period);
      if (laps[a] != laps[b] || std::fabs(us[a] - us[b]) > 1e-8) ok = false;
    }
    if (ok) {
      period = q;
      break;
    }
  }
  // pull the preperiod back as far as the window repeats
  while (kappa > 0 && laps[kappa - 1] == laps[kappa - 1 + period] &&
         std::fabs(us[kappa - 1] - us[kappa - 1 + period]) < 1e-8)
    --kappa;

  // signed period: doubles when the orientation product over one period is -1
  int omega = 1;
  for (long i = 0; i < period; ++i) omega *= lift.eps[laps[kappa + i] - 1];

  EventuallyPeriodicSeq seq;
  for (long i = 0; i < kappa; ++i) seq.preperiod.push_back({laps[i], taus[i]});
  for (long i = 0; i < period; ++i) seq.period.push_back({laps[kappa + i], taus[kappa + i]});
  if (omega < 0) {
    for (long i = 0; i < period; ++i)
      seq.period.push_back({laps[kappa + i], -taus[kappa + i]});
  }
  return seq;
}

EventuallyPeriodicSeq kneading_coordinates(const RealRationalMap& f, const CirclePoint& c,
                                           int side, const KneadingOptions& opts) {
  auto lift = make_interval_lift(f);
  if (!lift)
    throw UnsupportedSurjectiveNonCover("no interval lift for this circle map");
  int idx = -1;
  double best = 1e300;
  for (size_t i = 0; i < lift->turning_points.size(); ++i) {
    double dloc = chart_dist(lift->turning_points[i], c);
    if (dloc < best) {
      best = dloc;
      idx = static_cast<int>(i);
    }
  }
  if (idx < 0 || best > 1e-7)
    throw PreconditionFailed("point is not a turning point of the map");
  // sides live in the circle chart, which the lift coordinate preserves
  return kneading_coordinates(*lift, idx, side, opts);
}

// ---------------- kneading matrix and determinant ----------------

namespace {

// theta series per lap as integer rational functions with common denominator
struct ThetaSeries {
  std::vector<ZPoly> num;  // one per lap, over the common denominator
  ZPoly den;
};

ThetaSeries theta_of(const EventuallyPeriodicSeq& seq, int laps) {
  const long kappa = static_cast<long>(seq.preperiod.size());
  const long p = static_cast<long>(seq.period.size());
  // den = 1 - t^p  (the omega = -1 doubling is already folded into the period)
  ZPoly den;
  den.c.assign(p + 1, Int(0));
  den.c[0] = 1;
  den.c[p] = -1;
  den.trim();
  ThetaSeries th;
  th.den = den;
  th.num.assign(laps, ZPoly());
  auto add_term = [&](ZPoly& acc, long expo, int coef) {
    if (static_cast<long>(acc.c.size()) <= expo) acc.c.resize(expo + 1, Int(0));
    acc.c[expo] += coef;
  };
  for (int n = 0; n < laps; ++n) {
    ZPoly A, B;
    for (long i = 0; i < kappa; ++i)
      if (seq.preperiod[i].lap == n + 1) add_term(A, i, seq.preperiod[i].tau);
    for (long i = 0; i < p; ++i)
      if (seq.period[i].lap == n + 1) add_term(B, i, seq.period[i].tau);
    A.trim();
    B.trim();
    // theta_n = A + t^kappa B / (1 - t^p)
    ZPoly tk;
    tk.c.assign(kappa + 1, Int(0));
    tk.c[kappa] = 1;
    th.num[n] = A * den + ZPoly(tk) * B;
  }
  return th;
}

// all maximal minors of an (l-1) x l polynomial matrix, by memoized Laplace
// expansion over column subsets
struct MinorCalculator {
  const std::vector<std::vector<ZPoly>>& M;  // rows x cols
  std::map<unsigned, ZPoly> memo;
  explicit MinorCalculator(const std::vector<std::vector<ZPoly>>& m) : M(m) {}

  // determinant of rows 0..popcount(S)-1 and column set S
  const ZPoly& det(unsigned S) {
    auto it = memo.find(S);
    if (it != memo.end()) return it->second;
    int k = __builtin_popcount(S);
    ZPoly result;
    if (k == 1) {
      int col = __builtin_ctz(S);
      result = M[0][col];
    } else {
      int pos = 0;
      for (int col = 0; col < 32; ++col) {
        if (!(S & (1u << col))) continue;
        const ZPoly& sub = det(S & ~(1u << col));
        ZPoly term = M[k - 1][col] * sub;
        // expanding along the last row: sign (-1)^{(k-1)+pos}
        if (((k - 1) + pos) % 2 == 1) term = -term;
        result = result + term;
        ++pos;
      }
    }
    return memo.emplace(S, std::move(result)).first->second;
  }
};

}  // namespace

KneadingInvariant kneading_determinant(const RealRationalMap& f,
                                       const KneadingOptions& opts) {
  KneadingInvariant inv;
  auto Tc = turning_points(f);
  if (Tc.empty()) {
    // monotone circle restriction: empty matrix, D == 1, entropy 0 by convention
    inv.D = RatFun(ZPoly::constant(1), ZPoly::constant(1));
    inv.entropy = 0;
    inv.laps = 1;
    inv.certificate.c = {Int(-1), Int(1)};  // x - 1
    return inv;
  }
  auto lift_opt = make_interval_lift(f);
  if (!lift_opt)
    throw UnsupportedSurjectiveNonCover(
        "surjective multimodal circle map with no clean cut point");
  const IntervalLift& lift = *lift_opt;
  const int l = static_cast<int>(lift.turning.size()) + 1;
  inv.laps = l;
  inv.shapes = lift.eps;
  inv.chart = lift.chart;

  // kneading increments nu_m = theta(c_m^+) - theta(c_m^-)
  std::vector<std::vector<ZPoly>> N(l - 1, std::vector<ZPoly>(l));
  ZPoly R = ZPoly::constant(1);  // product of row denominators
  std::vector<ZPoly> row_den(l - 1);
  for (int m = 0; m < l - 1; ++m) {
    auto plus = kneading_coordinates(lift, m, +1, opts);
    auto minus = kneading_coordinates(lift, m, -1, opts);
    inv.symbol_span = std::max<int>(
        inv.symbol_span, static_cast<int>(plus.preperiod.size() + plus.period.size()));
    inv.symbol_span = std::max<int>(
        inv.symbol_span, static_cast<int>(minus.preperiod.size() + minus.period.size()));
    ThetaSeries tp = theta_of(plus, l);
    ThetaSeries tm = theta_of(minus, l);
    row_den[m] = tp.den * tm.den;
    for (int n = 0; n < l; ++n) N[m][n] = tp.num[n] * tm.den - tm.num[n] * tp.den;
    R = R * row_den[m];
  }

  // minors D_n (delete column n); all l of them share the memo table
  MinorCalculator calc(N);
  const unsigned full = (1u << l) - 1;
  std::vector<ZPoly> P(l);
  for (int n = 0; n < l; ++n) P[n] = calc.det(full & ~(1u << n));

  // normalized minors (-1)^{n+1} D_n / (1 - eps_n t) must agree pairwise
  auto one_minus_eps_t = [](int eps) {
    ZPoly z;
    z.c = {Int(1), Int(-eps)};
    return z;
  };
  for (int n = 1; n < l; ++n) {
    ZPoly lhs = P[0] * one_minus_eps_t(lift.eps[n]);
    ZPoly rhs = P[n] * one_minus_eps_t(lift.eps[0]);
    if (n % 2 == 1) rhs = -rhs;  // (-1)^{(n+1)+1} vs (-1)^{0+1+1}, 1-based n+1
    if (!(lhs == rhs))
      throw InconsistentMinors("normalized minor " + std::to_string(n + 1) +
                               " disagrees with minor 1");
  }

  RatFun D(P[0], R * one_minus_eps_t(lift.eps[0]));
  inv.D = D.reduced();
  // D(0) = +-1
  {
    Int n0 = inv.D.num.is_zero() ? Int(0) : inv.D.num.c[0];
    Int d0 = inv.D.den.c.empty() ? Int(0) : inv.D.den.c[0];
    if (!(n0 == d0 || n0 == -d0))
      throw InconsistentMinors("kneading determinant does not evaluate to +-1 at 0");
  }

  // smallest root of D in (0,1): denominator roots all live on |t| = 1
  QPoly numq = QPoly::from_z(inv.D.num);
  const Rat width = Rat(1) / Rat(Int("10000000000000"));  // 1e-13
  auto bracket = smallest_root_in(numq, Rat(0), Rat(1), width);
  if (bracket) {
    inv.has_root = true;
    inv.root_lo = bracket->first;
    inv.root_hi = bracket->second;
    double mid = Rat((bracket->first + bracket->second) / 2).get_d();
    inv.entropy = -std::log(mid);
    inv.certificate = inv.D.num.c.empty()
                          ? ZPoly()
                          : QPoly::from_z(inv.D.num)
                                .reverse(inv.D.num.degree())
                                .primitive_z();
  } else {
    inv.entropy = 0;
    inv.certificate.c = {Int(-1), Int(1)};
  }
  return inv;
}

// ---------------- entry points ----------------

std::pair<EntropyEstimate, std::optional<KneadingInvariant>> algebraic_entropy_full(
    const RealRationalMap& f, const KneadingOptions& opts) {
  const int d = f.degree();
  assert(d >= 2);
  if (turning_points(f).empty()) {
    int s = topological_degree(f);
    double h = std::log(std::max(std::abs(s), 1));
    EntropyEstimate e =
        make_estimate(h, h, h, 0, EntropyEstimate::Method::covering, d);
    KneadingInvariant inv;
    inv.D = RatFun(ZPoly::constant(1), ZPoly::constant(1));
    inv.entropy = h;
    inv.laps = 1;
    inv.certificate.c = {Int(-std::max(std::abs(s), 1)), Int(1)};
    return {e, inv};
  }
  KneadingInvariant inv = kneading_determinant(f, opts);
  EntropyEstimate e = make_estimate(inv.entropy, inv.entropy, inv.entropy,
                                    inv.symbol_span, EntropyEstimate::Method::kneading, d);
  // the kneading bracket collapses below double resolution; keep the triple equal
  e.lower = e.value;
  e.upper = e.value;
  return {e, inv};
}

EntropyEstimate algebraic_entropy(const RealRationalMap& f, const KneadingOptions& opts) {
  return algebraic_entropy_full(f, opts).first;
}

bool same_algebraic_root(const KneadingInvariant& a, const KneadingInvariant& b) {
  if (!a.has_root || !b.has_root) return a.has_root == b.has_root;
  // equal iff the isolating brackets overlap and a common annihilating factor
  // has a root inside the overlap; each bracket isolates exactly one root
  Rat lo = a.root_lo > b.root_lo ? a.root_lo : b.root_lo;
  Rat hi = a.root_hi < b.root_hi ? a.root_hi : b.root_hi;
  if (!(lo < hi)) return false;
  ZPoly g = zpoly_gcd(a.D.num, b.D.num);
  if (g.degree() < 1) return false;
  return SturmChain(QPoly::from_z(g)).count_roots(lo, hi) >= 1;
}

}  // namespace realdyn
