#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "realdyn/degree.hpp"
#include "realdyn/expr.hpp"

using namespace realdyn;

static RealRationalMap random_map(std::mt19937_64& rng, int max_deg = 5) {
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

TEST_CASE("signed crossing degree") {
  CHECK(topological_degree(parse_map("z^3")) == 1);
  CHECK(topological_degree(parse_map("z^2")) == 0);
  CHECK(topological_degree(parse_map("z-1/z")) == 2);  // degree two covering
  CHECK(topological_degree(parse_map("z^3-3*z")) == 1);
  CHECK(topological_degree(parse_map("-(z^3)")) == -1);
  CHECK(topological_degree(parse_map("1/z^2")) == 0);
  // x -> 1/x^3 is a decreasing homeomorphism of the real line through infinity
  CHECK(topological_degree(parse_map("1/z^3")) == -1);
}

TEST_CASE("quadrature oracle") {
  CHECK(std::fabs(quadrature_degree(parse_map("z^3"), 4096) - 1.0) < 0.01);
  CHECK(std::fabs(quadrature_degree(parse_map("z-1/z"), 4096) - 2.0) < 0.01);
  CHECK(std::fabs(quadrature_degree(parse_map("z^2"), 4096) - 0.0) < 0.01);
}

TEST_CASE("component labels") {
  ComponentLabel l1 = component_label(parse_map("z^2-3"));
  CHECK(l1.algebraic_degree == 2);
  CHECK(l1.circle_degree == 0);

  ComponentLabel l2 = component_label(parse_map("z-1/z"));
  CHECK(l2.algebraic_degree == 2);
  CHECK(l2.circle_degree == 2);

  ComponentLabel l3 = component_label(parse_map("z^3-3*z"));
  CHECK(l3.algebraic_degree == 3);
  CHECK(l3.circle_degree == 1);
}

TEST_CASE("parity and conjugation invariance (property)") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int i = 0; i < 100; ++i) {
    RealRationalMap f = random_map(rng);
    int s = topological_degree(f);
    CHECK(std::abs(s) <= f.degree());
    CHECK((f.degree() - s) % 2 == 0);

    // degree is invariant under real Mobius conjugation
    MobiusReal m = [&] {
      while (true) {
        Rat a(coef(rng)), b(coef(rng)), c(coef(rng)), d(coef(rng));
        if (a * d - b * c != 0) return MobiusReal(a, b, c, d);
      }
    }();
    CHECK(topological_degree(conjugate(f, m)) == s);
  }
}

TEST_CASE("quadrature agrees with the exact count (property)") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 40; ++i) {
    RealRationalMap f = random_map(rng);
    int s = topological_degree(f);
    double q = quadrature_degree(f, 4096);
    CHECK(std::fabs(q - s) < 0.5);
  }
}

TEST_CASE("degree independent of the regular value seed") {
  RealRationalMap f = parse_map("(z^3-2*z+1)/(z^2+1)");
  int s0 = topological_degree(f, 0);
  for (std::uint64_t seed = 1; seed < 8; ++seed)
    CHECK(topological_degree(f, seed) == s0);
}
