#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "realdyn/expr.hpp"
#include "realdyn/families.hpp"
#include "realdyn/kneading.hpp"

using namespace realdyn;

// the exact bracket must pin the root of D(t); check against a known value
static void check_root(const KneadingInvariant& inv, double expected_root) {
  REQUIRE(inv.has_root);
  CHECK(Rat(inv.root_hi - inv.root_lo).get_d() < 1e-12);
  CHECK(inv.root_lo.get_d() <= expected_root + 1e-9);
  CHECK(expected_root - 1e-9 <= inv.root_hi.get_d());
}

TEST_CASE("interval lift cut points") {
  // non-surjective: cut in the image gap
  auto l1 = make_interval_lift(parse_map("z^2-3"));
  REQUIRE(l1.has_value());
  CHECK(l1->turning.size() == 2);
  CHECK(l1->eps.size() == 3);

  // surjective odd polynomial: cut at the fixed non-turning point at infinity
  auto l2 = make_interval_lift(parse_map("z^3-3*z"));
  REQUIRE(l2.has_value());
  CHECK(l2->chart.is_identity());
  CHECK(l2->turning.size() == 2);

  // coverings have no turning points, hence no lift
  CHECK(!make_interval_lift(parse_map("z-1/z")).has_value());

  // the degree-0 rigid Lattes map misses (0,1), so a gap cut exists
  CHECK(make_interval_lift(lattes_rigid_sqrt2()).has_value());

  // genuinely surjective fold (degree-3 Lattes, pole inside the line): no cut
  CHECK(!make_interval_lift(lattes_rigid_sqrt3()).has_value());
}

TEST_CASE("kneading coordinates of the Chebyshev turning orbit") {
  // orbit 0 -> -2 -> 2 -> 2: short preperiod, then the fixed rightmost lap
  auto lift = make_interval_lift(parse_map("z^2-2"));
  REQUIRE(lift.has_value());
  // locate the finite turning point 0 of the lift
  CirclePoint c0 = CirclePoint::from_value(0);
  EventuallyPeriodicSeq seq = kneading_coordinates(parse_map("z^2-2"), c0, +1);
  CHECK(seq.preperiod.size() <= 3);
  CHECK(seq.period.size() == 1);
}

TEST_CASE("kneading determinant: quadratic benchmarks") {
  // z^2-2: full interval map, root exactly 1/2
  KneadingInvariant k1 = kneading_determinant(parse_map("z^2-2"));
  check_root(k1, 0.5);
  CHECK(std::fabs(k1.entropy - std::log(2.0)) < 1e-11);

  // z^2-3: Cantor Julia set, still log 2
  KneadingInvariant k2 = kneading_determinant(parse_map("z^2-3"));
  check_root(k2, 0.5);

  // monotone restriction: D == 1 by convention
  KneadingInvariant k3 = kneading_determinant(parse_map("z^3"));
  CHECK(!k3.has_root);
  CHECK(k3.entropy == 0.0);
  CHECK(k3.D.num == ZPoly::constant(1));

  // z^2+1: attracted to infinity, no root in (0,1)
  KneadingInvariant k4 = kneading_determinant(parse_map("z^2+1"));
  CHECK(!k4.has_root);
  CHECK(k4.entropy == 0.0);

  // basilica: superattracting 2-cycle, entropy still zero
  KneadingInvariant k5 = kneading_determinant(parse_map("z^2-1"));
  CHECK(k5.entropy == 0.0);
}

TEST_CASE("algebraic entropy on Chebyshev maps") {
  for (int d = 2; d <= 6; ++d) {
    auto [est, inv] = algebraic_entropy_full(chebyshev(d));
    REQUIRE(inv.has_value());
    check_root(*inv, 1.0 / d);
    CHECK(std::fabs(est.value - std::log(double(d))) < 1e-10);
    CHECK(est.lower == est.value);
    CHECK(est.upper == est.value);
    // exp(h) = d must satisfy the certificate polynomial
    double x = std::exp(est.value);
    double val = inv->certificate.eval(x);
    double scale = 0;
    for (const auto& cc : inv->certificate.c)
      scale += std::fabs(cc.get_d()) * std::pow(x, 1.0);
    CHECK(std::fabs(val) <= 1e-8 * (1 + scale));
  }
}

TEST_CASE("covering fallback in algebraic entropy") {
  EntropyEstimate e = algebraic_entropy(parse_map("z-1/z"));
  CHECK(e.method == EntropyEstimate::Method::covering);
  CHECK(e.value == std::log(2.0));
}

TEST_CASE("surjective fold without a cut point is declined") {
  CHECK_THROWS_AS(algebraic_entropy(lattes_rigid_sqrt3()), UnsupportedSurjectiveNonCover);
  // the Appendix-style degree-(5,3) map is surjective with folds as well
  CHECK_THROWS_AS(
      algebraic_entropy(parse_map("4*(z^5+3*z^2-1)/((z^2+z)*(z-1)^2)-35")),
      UnsupportedSurjectiveNonCover);
}

TEST_CASE("rigid Lattes sqrt2 entropy is exact by kneading") {
  auto [est, inv] = algebraic_entropy_full(lattes_rigid_sqrt2());
  REQUIRE(inv.has_value());
  CHECK(std::fabs(est.value - 0.5 * std::log(2.0)) < 1e-11);
  // exp(h) = sqrt 2: the certificate must annihilate it
  double x = std::exp(est.value);
  CHECK(std::fabs(inv->certificate.eval(x)) < 1e-6);
}

TEST_CASE("chaotic turning orbit is declined") {
  KneadingOptions opts;
  opts.max_iter = 20000;
  CHECK_THROWS_AS(kneading_determinant(parse_map("z^2-1.8"), opts),
                  NotEventuallyAttracted);
}

TEST_CASE("kneading agrees with the lap estimator") {
  for (const char* src : {"z^2-2", "z^2-3", "z^3-3*z", "z^2+1", "z^2-1"}) {
    RealRationalMap f = parse_map(src);
    EntropyEstimate ka = algebraic_entropy(f);
    EntropyEstimate la = lap_entropy(f, 12);
    CHECK(std::fabs(ka.value - la.value) < 0.03);
  }
}

TEST_CASE("hyperbolic local constancy (smoke)") {
  // 2 T_3 and small relative perturbations keeping the turning orbits escaping
  RealRationalMap base = make_map(chebyshev_poly(3) * Rat(2), QPoly::constant(Rat(1)));
  auto [e0, k0] = algebraic_entropy_full(base);
  REQUIRE(k0.has_value());
  CHECK(std::fabs(e0.value - std::log(3.0)) < 1e-10);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pert(-1000, 1000);
  for (int i = 0; i < 5; ++i) {
    QPoly p = base.num.p;
    for (auto& cc : p.c)
      if (cc != 0) cc *= Rat(1) + Rat(pert(rng), 1000000);
    auto [e1, k1] = algebraic_entropy_full(make_map(p, QPoly::constant(Rat(1))));
    REQUIRE(k1.has_value());
    CHECK(same_algebraic_root(*k0, *k1));
  }
}

TEST_CASE("distinct entropies give distinct algebraic roots") {
  auto [e2, k2] = algebraic_entropy_full(chebyshev(2));
  auto [e3, k3] = algebraic_entropy_full(chebyshev(3));
  REQUIRE((k2.has_value() && k3.has_value()));
  CHECK(!same_algebraic_root(*k2, *k3));
}
