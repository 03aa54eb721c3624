#include "realdyn/families.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "realdyn/kneading.hpp"
#include "realdyn/numroots.hpp"

namespace realdyn {

RealRationalMap quadratic(const Rat& c) {
  return make_map(QPoly({c, Rat(0), Rat(1)}), QPoly::constant(Rat(1)));
}

QPoly chebyshev_poly(int d) {
  assert(d >= 1);
  QPoly t1 = QPoly::x();
  QPoly t2({Rat(-2), Rat(0), Rat(1)});
  if (d == 1) return t1;
  QPoly prev = t1, cur = t2;
  for (int n = 2; n < d; ++n) {
    QPoly next = QPoly::x() * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

RealRationalMap chebyshev(int d) {
  assert(d >= 2);
  QPoly T = chebyshev_poly(d);
  // T_d(z + 1/z) z^d = z^{2d} + 1, exactly
  QPoly zsq_plus_1({Rat(1), Rat(0), Rat(1)});
  QPoly lhs;
  std::vector<QPoly> pw(d + 1), pz(d + 1);
  pw[0] = QPoly::constant(Rat(1));
  pz[0] = QPoly::constant(Rat(1));
  for (int i = 1; i <= d; ++i) {
    pw[i] = pw[i - 1] * zsq_plus_1;
    pz[i] = pz[i - 1] * QPoly::x();
  }
  for (int k = 0; k <= d; ++k)
    if (T.coeff(k) != 0) lhs = lhs + pw[k] * pz[d - k] * T.coeff(k);
  QPoly rhs;
  rhs.c.assign(2 * d + 1, Rat(0));
  rhs.c[0] = 1;
  rhs.c[2 * d] = 1;
  rhs.trim();
  assert(lhs == rhs && "Chebyshev semiconjugacy identity failed");
  return make_map(T, QPoly::constant(Rat(1)));
}

RealRationalMap lattes_legendre(const Rat& lambda) {
  if (!(lambda > 0 && lambda < 1))
    throw ParameterOutOfRange("lambda must lie in (0,1)");
  // duplication of the x-coordinate on y^2 = x(x-1)(x-lambda):
  //   x([2]P) = (x^2 - lambda)^2 / (4 x (x-1) (x-lambda))
  QPoly quad({-lambda, Rat(0), Rat(1)});
  QPoly num = quad * quad;
  QPoly den = QPoly({Rat(0), Rat(1)}) * QPoly({Rat(-1), Rat(1)}) *
              QPoly({-lambda, Rat(1)}) * Rat(4);
  RealRationalMap f = make_map(num, den);
  assert(f.degree() == 4);
  // tangent-line duplication oracle on a few rational curve points
  const Rat A = -(Rat(1) + lambda), B = lambda;
  int tested = 0;
  for (int xi = 2; tested < 5; ++xi) {
    Rat x0(xi);
    Rat y0sq = x0 * (x0 - 1) * (x0 - lambda);
    if (y0sq == 0) continue;
    Rat slope_sq = (Rat(3) * x0 * x0 + Rat(2) * A * x0 + B);
    slope_sq = slope_sq * slope_sq / (Rat(4) * y0sq);
    Rat x2 = slope_sq - A - 2 * x0;
    ExactPoint fx = f.eval_exact(ExactPoint::at(x0));
    assert(!fx.inf && fx.v == x2 && "group-law duplication oracle failed");
    (void)fx;
    (void)x2;
    ++tested;
  }
  return f;
}

RealRationalMap lattes_rigid_sqrt2() {
  // -(1/4)(z + 1/z - 2) = -(z-1)^2 / (4z)
  QPoly num({Rat(-1), Rat(2), Rat(-1)});
  QPoly den({Rat(0), Rat(4)});
  return make_map(num, den);
}

RealRationalMap lattes_rigid_sqrt3() {
  // -(1/27) z (z-9)^2 / (z-1)^2
  QPoly num = QPoly({Rat(0), Rat(1)}) * QPoly({Rat(-9), Rat(1)}) *
              QPoly({Rat(-9), Rat(1)}) * Rat(-1);
  QPoly den = QPoly({Rat(-1), Rat(1)}) * QPoly({Rat(-1), Rat(1)}) * Rat(27);
  return make_map(num, den);
}

// ---------------- Appendix-style full-real-Julia normal form ----------------

namespace {

struct ShiftCertificate {
  Rat a;
  Rat mprime;
};

// growth certificate |f(x)| > lam' |x| for |x| > M, by Sturm on p^2 - lam'^2 x^2 den^2
Rat certified_growth_radius(const QPoly& p, const QPoly& den, const Rat& lam_prime,
                            Rat m0) {
  QPoly g = p * p - QPoly({Rat(0), Rat(0), lam_prime * lam_prime}) * den * den;
  for (const auto& iv : isolate_real_roots(g)) {
    Rat b1 = abs(iv.first), b2 = abs(iv.second);
    Rat bound = b1 > b2 ? b1 : b2;
    if (bound >= m0) m0 = bound + 1;
  }
  return m0;
}

}  // namespace

FullRealJuliaResult full_real_julia_family(int d, int s, const QPoly& p,
                                           const std::vector<Rat>& u,
                                           const std::vector<Rat>& v) {
  if (std::abs(s) > d || (d - s) % 2 != 0)
    throw ParameterOutOfRange("need |s| <= d with s = d (mod 2)");
  if (s == 0) {
    // the paper's s = 0 witness: 2 T_d is hyperbolic with Cantor Julia set in R
    FullRealJuliaResult r;
    r.map = make_map(chebyshev_poly(d) * Rat(2), QPoly::constant(Rat(1)));
    r.shift = 0;
    r.mprime = 2;
    return r;
  }
  const int sa = std::abs(s);
  if (sa == d)
    throw ParameterOutOfRange("|s| = d is a covering; use perturbed_power_cover");
  if (static_cast<int>(u.size()) != sa - 1 ||
      static_cast<int>(v.size()) != (d - sa) / 2)
    throw ParameterOutOfRange("need s-1 simple poles and (d-s)/2 double poles");
  if (v.empty()) throw ParameterOutOfRange("need at least one double pole");
  if (p.degree() != d) throw SignPatternViolated("p must have degree exactly d");
  // ordering u_1 < ... < u_{s-1} < v_1 < ... < v_k
  {
    std::vector<Rat> all = u;
    all.insert(all.end(), v.begin(), v.end());
    for (size_t i = 1; i < all.size(); ++i)
      if (!(all[i - 1] < all[i]))
        throw ParameterOutOfRange("poles must be strictly increasing");
  }
  // sign pattern: alternating along u_1..u_{s-1}, v_1, ending positive at v_1
  for (size_t i = 0; i < u.size(); ++i) {
    int expect = ((u.size() - i) % 2 == 0) ? +1 : -1;
    if (sgn(p.eval(u[i])) != expect)
      throw SignPatternViolated("sign of p at u_" + std::to_string(i + 1));
  }
  for (const auto& vj : v)
    if (sgn(p.eval(vj)) <= 0) throw SignPatternViolated("p must be positive at the v_j");
  const Rat lam = p.lead();
  if (!(lam > 2)) throw MultiplierTooSmall("leading coefficient must exceed 2");

  QPoly den = QPoly::constant(Rat(1));
  for (const auto& ui : u) den = den * QPoly({-ui, Rat(1)});
  for (const auto& vj : v) den = den * QPoly({-vj, Rat(1)}) * QPoly({-vj, Rat(1)});

  const Rat lam_prime = (lam + 2) / 2;
  Rat m0(2);
  for (const auto& ui : u) {
    Rat t = abs(ui) + 1;
    if (t > m0) m0 = t;
  }
  for (const auto& vj : v) {
    Rat t = abs(vj) + 1;
    if (t > m0) m0 = t;
  }
  Rat M = certified_growth_radius(p, den, lam_prime, m0);

  // min of f over the "latter" intervals (between and beyond the double poles)
  RealRationalMap f0 = make_map(p, den);
  double minval = std::numeric_limits<double>::infinity();
  {
    std::vector<double> crit;
    for (double r : real_roots(f0.wronskian().dcoeffs())) crit.push_back(r);
    double v0 = v.front().get_d();
    for (double r : crit) {
      if (r <= v0) continue;
      bool at_pole = false;
      for (const auto& vj : v)
        if (std::fabs(r - vj.get_d()) < 1e-9) at_pole = true;
      if (at_pole) continue;
      double val = f0.num.p.eval(r) / f0.den.p.eval(r);
      minval = std::min(minval, val);
    }
    assert(std::isfinite(minval) && "no interior minimum over the latter intervals");
  }
  Rat minr = rat_from_double(minval);

  // a just above the proof's bound, then verify and bump if the margin is thin
  Rat bound = minr + M;
  {
    Rat alt = (lam_prime - 1) / (lam_prime - 2) * minr;
    if (alt > bound) bound = alt;
    if (M > bound) bound = M;
  }
  Rat a = bound * Rat(101, 100);
  for (int attempt = 0; attempt < 6; ++attempt) {
    Rat mprime = a - minr;
    bool ok = mprime > M && (lam_prime * mprime - a) > mprime;
    if (ok) {
      RealRationalMap fa = make_map(p - den * a, den);
      int got = topological_degree(fa);
      if (got != sa) throw ParityViolation("normal form degree " + std::to_string(got));
      // sampled backward invariance of [-M', M']
      double mp = mprime.get_d();
      bool invariant = true;
      for (int i = 0; i < 1000 && invariant; ++i) {
        double y = -mp + (2 * mp) * (i + 0.5) / 1000.0;
        for (const auto& [q, mult] : solve_real_preimages(fa, CirclePoint::from_value(y))) {
          (void)mult;
          if (q.infinite || std::fabs(q.x) > mp + 1e-9) invariant = false;
        }
      }
      if (invariant) {
        FullRealJuliaResult out;
        if (s > 0) {
          out.map = fa;
        } else {
          out.map = make_map(-(p - den * a), den);  // degree flips to -|s|
        }
        out.shift = a.get_d();
        out.mprime = mp;
        return out;
      }
    }
    a = a * Rat(3, 2);
  }
  throw MultiplierTooSmall("could not certify a backward-invariant interval");
}

BlaschkeProduct perturbed_power_cover(int d, int s, double delta) {
  if (s == 0 || std::abs(s) > d || (d - s) % 2 != 0)
    throw ParityViolation("need 0 != |s| <= d with s = d (mod 2)");
  if (!(delta >= 0 && delta < 0.1)) throw ParameterOutOfRange("delta in [0, 0.1)");
  const int k = (d + s) / 2;
  if (delta == 0.0) {
    // the limit is the exact cover z^s (outside zeros cancel at infinity)
    std::vector<std::complex<double>> zeros(std::abs(s), std::complex<double>(0, 0));
    return make_blaschke(zeros, {}, 0.0, s < 0);
  }
  // conjugation-symmetric ring placements, paired bitwise exactly
  auto ring = [](int n, double radius) {
    std::vector<std::complex<double>> zs;
    for (int j = 0; j + j <= n; ++j) {
      if (j == 0) {
        zs.push_back(std::complex<double>(radius, 0));
        continue;
      }
      if (2 * j == n) {
        zs.push_back(std::complex<double>(-radius, 0));
        continue;
      }
      double re = radius * std::cos(2 * M_PI * j / n);
      double im = radius * std::sin(2 * M_PI * j / n);
      zs.push_back(std::complex<double>(re, im));
      zs.push_back(std::complex<double>(re, -im));
    }
    zs.resize(n);
    return zs;
  };
  return make_blaschke(ring(k, delta), ring(d - k, 1.0 / delta), 0.0, false);
}

// ---------------- sweeps ----------------

SweepResult sweep(const FamilySpec& spec, const std::vector<std::vector<double>>& grid,
                  EstimatorTag estimator, double constancy_tol, int depth,
                  const EntropyOptions& opts) {
  SweepResult out;
  out.tolerance = constancy_tol;
  std::vector<double> values;
  for (const auto& params : grid) {
    SweepRow row;
    row.params = params;
    try {
      RealRationalMap f = spec.generator(params);
      row.label = component_label(f);
      switch (estimator) {
        case EstimatorTag::lap:
          row.estimate = lap_entropy(f, depth, opts);
          break;
        case EstimatorTag::preimage: {
          CirclePoint x = CirclePoint::from_value(0.123456789);
          row.estimate = preimage_growth_entropy(f, x, depth, opts);
          break;
        }
        case EstimatorTag::kneading:
          row.estimate = algebraic_entropy(f);
          break;
        case EstimatorTag::automatic:
          try {
            row.estimate = algebraic_entropy(f);
          } catch (const Error&) {
            row.estimate = lap_entropy(f, depth, opts);
          }
          break;
      }
      row.status = "ok";
      values.push_back(row.estimate.value);
    } catch (const Error& e) {
      row.status = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  if (!values.empty()) {
    auto mm = std::minmax_element(values.begin(), values.end());
    out.min_entropy = *mm.first;
    out.max_entropy = *mm.second;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    out.median_entropy = sorted[sorted.size() / 2];
    out.constant = (out.max_entropy - out.min_entropy) < constancy_tol;
  }
  return out;
}

FamilySpec find_family(const std::string& name) {
  FamilySpec spec;
  spec.name = name;
  if (name == "lattes-legendre") {
    spec.param_names = {"lambda"};
    spec.generator = [](const std::vector<double>& p) {
      return lattes_legendre(rat_from_double(p.at(0)));
    };
    spec.expected_entropy = std::log(2.0);
  } else if (name == "quadratic") {
    spec.param_names = {"c"};
    spec.generator = [](const std::vector<double>& p) {
      return quadratic(rat_from_double(p.at(0)));
    };
  } else if (name == "chebyshev") {
    spec.param_names = {"d"};
    spec.generator = [](const std::vector<double>& p) {
      return chebyshev(static_cast<int>(p.at(0)));
    };
  } else if (name == "power-cover") {
    spec.param_names = {"d", "s", "delta"};
    spec.generator = [](const std::vector<double>& p) {
      return cayley(perturbed_power_cover(static_cast<int>(p.at(0)),
                                          static_cast<int>(p.at(1)), p.at(2)));
    };
  } else {
    throw ParameterOutOfRange("unknown family '" + name + "'");
  }
  return spec;
}

}  // namespace realdyn
