#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "realdyn/entropy.hpp"
#include "realdyn/expr.hpp"

using namespace realdyn;

TEST_CASE("real preimages") {
  RealRationalMap f = parse_map("z^2-3");
  auto p0 = solve_real_preimages(f, CirclePoint::from_value(0));
  REQUIRE(p0.size() == 2);
  CHECK(p0[0].first.x == doctest::Approx(-std::sqrt(3.0)));
  CHECK(p0[1].first.x == doctest::Approx(std::sqrt(3.0)));

  auto pinf = solve_real_preimages(f, CirclePoint::infinity());
  REQUIRE(pinf.size() == 1);
  CHECK(pinf[0].first.infinite);
  CHECK(pinf[0].second == 2);  // polynomial: infinity with multiplicity 2

  RealRationalMap g = parse_map("z-1/z");
  auto q0 = solve_real_preimages(g, CirclePoint::from_value(0));
  REQUIRE(q0.size() == 2);
  CHECK(q0[0].first.x == doctest::Approx(-1.0));
  CHECK(q0[1].first.x == doctest::Approx(1.0));

  // double root counted with multiplicity: preimages of 0 under z^2
  auto d0 = solve_real_preimages(parse_map("z^2"), CirclePoint::from_value(0));
  REQUIRE(d0.size() == 1);
  CHECK(d0[0].second == 2);
}

TEST_CASE("turning points") {
  auto t1 = turning_points(parse_map("z^2-3"));
  REQUIRE(t1.size() == 2);
  CHECK(t1[0].infinite);  // both chart sides of infinity map toward +infinity
  CHECK(t1[1].x == doctest::Approx(0.0));

  auto t2 = turning_points(parse_map("z^3-3*z"));
  REQUIRE(t2.size() == 2);
  CHECK(t2[0].x == doctest::Approx(-1.0));
  CHECK(t2[1].x == doctest::Approx(1.0));

  CHECK(turning_points(parse_map("z-1/z")).empty());  // covering
  CHECK(turning_points(parse_map("z^3")).empty());    // monotone
}

TEST_CASE("lap counts by backward union") {
  // turning set {0, oo}; f^-1(0) = {+-sqrt3}, f^-1(oo) = {oo}
  auto l = lap_counts(parse_map("z^2-3"), 3);
  CHECK(l == std::vector<long>{2, 4, 8});

  // f^-1(+-1) has three real points each since |+-1| < 2
  auto l2 = lap_counts(parse_map("z^3-3*z"), 2);
  CHECK(l2 == std::vector<long>{2, 8});
}

TEST_CASE("lap entropy on the pinned examples") {
  EntropyEstimate e1 = lap_entropy(parse_map("z^3-3*z"), 8);
  CHECK(e1.method == EntropyEstimate::Method::lap);
  CHECK(std::fabs(e1.value - std::log(3.0)) < 0.02);

  EntropyEstimate e2 = lap_entropy(parse_map("z^2+1"), 8);
  CHECK(std::fabs(e2.value) < 0.02);

  EntropyEstimate e3 = lap_entropy(parse_map("z^2-3"), 12);
  CHECK(std::fabs(e3.value - std::log(2.0)) < 0.02);

  // covering fallback is exact
  EntropyEstimate e4 = lap_entropy(parse_map("z-1/z"), 8);
  CHECK(e4.method == EntropyEstimate::Method::covering);
  CHECK(e4.value == std::log(2.0));
  CHECK(e4.lower == e4.upper);

  // the plus-sign twist has real critical points: lap path, entropy zero
  EntropyEstimate e5 = lap_entropy(parse_map("(1/2)*(z+1/z)"), 8);
  CHECK(e5.method == EntropyEstimate::Method::lap);
  CHECK(std::fabs(e5.value) < 0.02);

  // the minus-sign twist is the genuine covering
  EntropyEstimate e6 = lap_entropy(parse_map("(1/2)*(z-1/z)"), 8);
  CHECK(e6.method == EntropyEstimate::Method::covering);
  CHECK(e6.value == std::log(2.0));
}

TEST_CASE("estimate ordering and range") {
  for (const char* src : {"z^3-3*z", "z^2-3", "z^2+1", "z^2-1"}) {
    RealRationalMap f = parse_map(src);
    EntropyEstimate e = lap_entropy(f, 10);
    CHECK(e.lower >= 0);
    CHECK(e.lower <= e.value);
    CHECK(e.value <= e.upper);
    CHECK(e.upper <= std::log(static_cast<double>(f.degree())) + 1e-9);
  }
}

TEST_CASE("preimage growth entropy") {
  EntropyEstimate e1 =
      preimage_growth_entropy(parse_map("z^2-3"), CirclePoint::from_value(0), 12);
  CHECK(e1.method == EntropyEstimate::Method::preimage);
  CHECK(std::fabs(e1.value - std::log(2.0)) < 0.02);

  EntropyEstimate e2 =
      preimage_growth_entropy(parse_map("z^2"), CirclePoint::from_value(2), 10);
  CHECK(std::fabs(e2.value) < 0.05);

  EntropyEstimate e3 =
      preimage_growth_entropy(parse_map("z^3-3*z"), CirclePoint::from_value(0.1), 8);
  CHECK(std::fabs(e3.value - std::log(3.0)) < 0.05);
}

TEST_CASE("sandwich: one preimage per lap (property)") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> xs(-2.0, 2.0);
  for (const char* src : {"z^2-3", "z^3-3*z", "z^2-1.7"}) {
    RealRationalMap f = parse_map(src);
    auto l = lap_counts(f, 8);
    CirclePoint x = CirclePoint::from_value(xs(rng));
    PreimageTree tree = build_preimage_tree(f, x, 8, EntropyOptions{});
    // one preimage per lap of the cut interval lift: the cut adds one lap,
    // which is the spec's +log 2 correction in the upper bracket
    for (size_t n = 0; n < tree.counts.size() && n < l.size(); ++n)
      CHECK(tree.counts[n] <= l[n] + 1);
  }
}

TEST_CASE("upper bracket is monotone in depth") {
  RealRationalMap f = parse_map("z^2-1.8");
  double prev = 1e300;
  for (int N = 3; N <= 10; ++N) {
    auto l = lap_counts(f, N);
    double upper = 1e300;
    for (size_t i = 0; i < l.size(); ++i)
      upper = std::min(upper, (std::log(double(l[i])) + std::log(2.0)) / double(i + 1));
    CHECK(upper <= prev + 1e-12);
    prev = upper;
  }
}

TEST_CASE("rotation numbers") {
  // parabolic diffeomorphism with rho = 0
  double r1 = rotation_number(parse_map("z+1/(z^2+2)"), 10000);
  CHECK(std::min(r1, 1 - r1) < 1e-3);

  // exact quarter turn: x -> (x+1)/(1-x) has orbit 0 -> 1 -> oo -> -1 -> 0
  double r2 = rotation_number(parse_map("(z+1)/(1-z)"), 10000);
  CHECK(std::fabs(r2 - 0.25) < 1e-3);

  CHECK_THROWS_AS(rotation_number(parse_map("z^2"), 100), NotACircleHomeo);
  CHECK_THROWS_AS(rotation_number(parse_map("z^2-3"), 100), NotACircleHomeo);
}

TEST_CASE("lap entropy is a conjugation invariant (smoke)") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> coef(-2, 2);
  RealRationalMap f = parse_map("z^2-3");
  double base = lap_entropy(f, 10).value;
  int done = 0;
  while (done < 5) {
    Rat a(coef(rng)), b(coef(rng)), c(coef(rng)), d(coef(rng));
    if (a * d - b * c == 0) continue;
    MobiusReal m(a, b, c, d);
    double conj_val = lap_entropy(conjugate(f, m), 10).value;
    CHECK(std::fabs(conj_val - base) < 0.02);
    ++done;
  }
}

TEST_CASE("iterate scaling h(f^2) = 2 h(f) (smoke)") {
  RealRationalMap f = parse_map("z^2-3");
  RealRationalMap f2 = compose(f, f);
  double h1 = lap_entropy(f, 12).value;
  double h2 = lap_entropy(f2, 8).value;
  CHECK(std::fabs(h2 - 2 * h1) < 0.05);
}

TEST_CASE("budget error") {
  EntropyOptions tiny;
  tiny.budget = 20;
  CHECK_THROWS_AS(lap_counts(parse_map("z^2-3"), 12, tiny), DepthBudgetExceeded);
}
