#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "realdyn/expr.hpp"
#include "realdyn/realmap.hpp"

using namespace realdyn;

static RealRationalMap random_map(std::mt19937_64& rng, int max_deg = 4) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> deg(2, max_deg);
  while (true) {
    int dp = deg(rng), dq = deg(rng) - 2;
    QPoly P, Q;
    for (int i = 0; i <= dp; ++i) P.c.push_back(Rat(coef(rng)));
    for (int i = 0; i <= dq; ++i) Q.c.push_back(Rat(coef(rng)));
    P.trim();
    Q.trim();
    try {
      RealRationalMap f = make_map(P, Q);
      if (f.degree() >= 2) return f;
    } catch (const Error&) {
    }
  }
}

static MobiusReal random_mobius(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  while (true) {
    Rat a(coef(rng)), b(coef(rng)), c(coef(rng)), d(coef(rng));
    if (a * d - b * c != 0) return MobiusReal(a, b, c, d);
  }
}

TEST_CASE("make_map reduction and errors") {
  RealRationalMap f = parse_map("z^2-3");
  CHECK(f.degree() == 2);

  // common factor cancels: (z^2-z)/(z-1) = z
  RealRationalMap g = make_map(QPoly({Rat(0), Rat(-1), Rat(1)}), QPoly({Rat(-1), Rat(1)}));
  CHECK(g.degree() == 1);
  CHECK(g.num.p == QPoly({Rat(0), Rat(1)}));

  CHECK_THROWS_AS(make_map(QPoly({Rat(1), Rat(0), Rat(1)}), QPoly()), ZeroDenominator);
  CHECK_THROWS_AS(make_map(QPoly({Rat(2), Rat(2)}), QPoly({Rat(1), Rat(1)})),
                  DegeneratesToConstant);
}

TEST_CASE("projective evaluation") {
  RealRationalMap f = parse_map("z^2-3");
  CHECK(f.eval(CirclePoint::from_value(2)).x == doctest::Approx(1.0));

  RealRationalMap g = parse_map("z-1/z");
  CHECK(g.eval(CirclePoint::from_value(0)).infinite);   // pole
  CHECK(g.eval(CirclePoint::infinity()).infinite);      // parabolic fixed point
  ExactPoint e = g.eval_exact(ExactPoint::at(Rat(2)));
  CHECK(e.v == Rat(3, 2));
}

TEST_CASE("critical points") {
  auto c1 = critical_points_real(parse_map("z^2-3"));
  REQUIRE(c1.size() == 2);
  // ordered by angle: infinity (angle 0) first, then 0
  CHECK(c1[0].first.infinite);
  CHECK(c1[0].second == 1);
  CHECK(c1[1].first.x == doctest::Approx(0.0));
  CHECK(c1[1].second == 1);

  // the finite folds at -1 and 1, plus the odd-local-degree point at infinity
  // (multiplicity 2: it is critical for the map but not a fold of the circle)
  auto c2 = critical_points_real(parse_map("z^3-3*z"));
  REQUIRE(c2.size() == 3);
  CHECK(c2[0].first.infinite);
  CHECK(c2[0].second == 2);
  CHECK(c2[1].first.x == doctest::Approx(-1.0));
  CHECK(c2[1].second == 1);
  CHECK(c2[2].first.x == doctest::Approx(1.0));
  CHECK(c2[2].second == 1);

  CHECK(critical_points_real(parse_map("z-1/z")).empty());
}

TEST_CASE("fixed points and multipliers") {
  auto f1 = fixed_points_real(parse_map("z^2-3"));
  REQUIRE(f1.size() == 3);  // (1 +- sqrt 13)/2 and infinity
  bool saw_inf = false;
  for (auto& [p, m] : f1) {
    if (p.infinite) {
      saw_inf = true;
      CHECK(m == doctest::Approx(0.0));  // superattracting for a polynomial
    } else {
      double expect = 1 + 2 * p.x - 1;  // multiplier 2x at a fixed point of z^2-3
      CHECK(m == doctest::Approx(expect).epsilon(1e-9));
    }
  }
  CHECK(saw_inf);

  auto f2 = fixed_points_real(parse_map("z-1/z"));
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].first.infinite);
  CHECK(f2[0].second == doctest::Approx(1.0));  // parabolic, multiplier +1

  auto f3 = fixed_points_real(parse_map("z^3"));
  CHECK(f3.size() == 4);  // 0, 1, -1, infinity
}

TEST_CASE("conjugation") {
  RealRationalMap f = parse_map("z^2");
  CHECK(conjugate(f, MobiusReal::identity()) == f);

  // m = x+1: m f m^-1 = (x-1)^2 + 1 = x^2 - 2x + 2
  MobiusReal shift(Rat(1), Rat(1), Rat(0), Rat(1));
  RealRationalMap g = conjugate(f, shift);
  CHECK(g.num.p == QPoly({Rat(2), Rat(-2), Rat(1)}));

  // the symmetry-locus twist pair commutes with x -> -x
  RealRationalMap tw = parse_map("(1/2)*(z+1/z)");
  MobiusReal neg(Rat(-1), Rat(0), Rat(0), Rat(1));
  CHECK(conjugate(tw, neg) == tw);
}

TEST_CASE("commutation checks") {
  MobiusReal neg(Rat(-1), Rat(0), Rat(0), Rat(1));
  CHECK(commutes_with(parse_map("(1/2)*(z+1/z)"), neg));
  CHECK(!commutes_with(parse_map("z^2+1"), neg));
  CHECK(commutes_with(parse_map("z-1/z"), neg));

  // odd power maps commute with the antipodal involution: f(-1/z) f(z) = -1
  CHECK(commutes_with(parse_map("z^3"), AntipodalMarker{}));
  CHECK(!commutes_with(parse_map("z^2"), AntipodalMarker{}));
  CHECK(!commutes_with(parse_map("z^2-3"), AntipodalMarker{}));
}

TEST_CASE("candidate symmetries") {
  auto s1 = candidate_symmetries(parse_map("(1/2)*(z-1/z)"));
  bool has_neg = false;
  for (const auto& m : s1)
    if (m.a == -1 && m.b == 0 && m.c == 0 && m.d == 1) has_neg = true;
  CHECK(has_neg);

  CHECK(candidate_symmetries(parse_map("z^2+1")).empty());

  auto s3 = candidate_symmetries(parse_map("z^3"));
  bool has_neg3 = false, has_inv3 = false;
  for (const auto& m : s3) {
    if (m.a == -1 && m.b == 0 && m.c == 0 && m.d == 1) has_neg3 = true;
    if (m.a == 0 && m.b == 1 && m.c == 1 && m.d == 0) has_inv3 = true;
  }
  CHECK(has_neg3);
  CHECK(has_inv3);
}

TEST_CASE("conjugation round trip, exact (property)") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    RealRationalMap f = random_map(rng);
    MobiusReal m = random_mobius(rng);
    RealRationalMap back = conjugate(conjugate(f, m), m.inverse());
    CHECK(back == f);
  }
}

TEST_CASE("coprimality after make_map (property)") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    RealRationalMap f = random_map(rng);
    CHECK(resultant(f.num.p, f.den.p) != 0);
  }
}

TEST_CASE("exact and float evaluation agree (property)") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> xs(-20.0, 20.0);
  int checked = 0;
  while (checked < 1000) {
    RealRationalMap f = random_map(rng);
    for (int k = 0; k < 10 && checked < 1000; ++k) {
      double x = xs(rng);
      Rat xr = rat_from_double(x);
      if (f.den.p.eval(xr) == 0) continue;
      ExactPoint ey = f.eval_exact(ExactPoint::at(xr));
      CirclePoint fy = f.eval(CirclePoint::from_value(x));
      CirclePoint eyc = ey.inf ? CirclePoint::infinity()
                               : CirclePoint::from_value(ey.v.get_d());
      // compare in the angle chart, away from poles by chart distance
      if (chart_dist(eyc, CirclePoint::infinity()) < 1e-6) continue;
      CHECK(chart_dist(eyc, fy) < 1e-10);
      ++checked;
    }
  }
}

TEST_CASE("critical set transforms under conjugation (property)") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 50; ++i) {
    RealRationalMap f = random_map(rng, 3);
    MobiusReal m = random_mobius(rng);
    RealRationalMap g = conjugate(f, m);
    auto cf = critical_points_real(f);
    auto cg = critical_points_real(g);
    REQUIRE(cf.size() == cg.size());
    // m(critical points of f) = critical points of g, multiplicities matching
    for (auto& [p, mult] : cf) {
      CirclePoint mp = m.apply(p);
      bool found = false;
      for (auto& [q, mult2] : cg)
        if (chart_dist(mp, q) < 1e-6 && mult == mult2) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("fixed point multipliers are conjugation invariants (property)") {
  std::mt19937_64 rng(15);
  int done = 0;
  while (done < 25) {
    RealRationalMap f = random_map(rng, 3);
    MobiusReal m = random_mobius(rng);
    RealRationalMap g = conjugate(f, m);
    auto ff = fixed_points_real(f);
    auto fg = fixed_points_real(g);
    if (ff.size() != fg.size()) continue;  // borderline roots; skip
    bool all_found = true;
    for (auto& [p, mult] : ff) {
      CirclePoint mp = m.apply(p);
      bool found = false;
      for (auto& [q, mult2] : fg)
        if (chart_dist(mp, q) < 1e-6 && std::fabs(mult - mult2) < 1e-7 * (1 + std::fabs(mult)))
          found = true;
      if (!found) all_found = false;
    }
    CHECK(all_found);
    ++done;
  }
}
