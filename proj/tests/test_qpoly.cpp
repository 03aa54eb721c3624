#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "realdyn/qpoly.hpp"

using namespace realdyn;

static QPoly qp(std::initializer_list<long> cs) {
  QPoly p;
  for (long c : cs) p.c.push_back(Rat(c));
  p.trim();
  return p;
}

TEST_CASE("rational parsing") {
  CHECK(rat_from_string("3") == Rat(3));
  CHECK(rat_from_string("-5/7") == Rat(-5, 7));
  CHECK(rat_from_string("0.25") == Rat(1, 4));
  CHECK(rat_from_string("1e-3") == Rat(1, 1000));
  CHECK(rat_from_string("-2.5e2") == Rat(-250));
  CHECK(rat_from_double(0.5) == Rat(1, 2));
}

TEST_CASE("divrem and gcd") {
  QPoly a = qp({-1, 0, 1});  // x^2 - 1
  QPoly b = qp({-1, 1});     // x - 1
  auto [q, r] = qpoly_divrem(a, b);
  CHECK(q == qp({1, 1}));
  CHECK(r.is_zero());
  CHECK(qpoly_gcd(a, b) == qp({-1, 1}));

  // gcd of coprime polynomials is constant
  CHECK(qpoly_gcd(qp({1, 0, 1}), qp({-2, 1})).degree() == 0);
}

TEST_CASE("resultant") {
  // res(x^2-1, x-2) = (2^2 - 1) = 3
  CHECK(resultant(qp({-1, 0, 1}), qp({-2, 1})) == Rat(3));
  // shared root makes it vanish
  CHECK(resultant(qp({-1, 0, 1}), qp({-1, 1})) == Rat(0));
  // res(x-a, x-b) = b - a: evaluate the second at the root of the first
  CHECK(resultant(qp({-2, 1}), qp({-3, 1})) == Rat(-1));
}

TEST_CASE("squarefree decomposition") {
  // (x-1)^2 (x+2)
  QPoly p = qp({-1, 1}) * qp({-1, 1}) * qp({2, 1});
  auto f = squarefree_decomposition(p);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == qp({2, 1}));   // multiplicity 1 part
  CHECK(f[1] == qp({-1, 1}));  // multiplicity 2 part
  CHECK(squarefree_part(p).degree() == 2);
}

TEST_CASE("sturm root counting") {
  // (x-1)(x-2)(x-3)
  QPoly p = qp({-1, 1}) * qp({-2, 1}) * qp({-3, 1});
  SturmChain ch(p);
  CHECK(ch.count_real_roots() == 3);
  CHECK(ch.count_roots(Rat(0), Rat(5)) == 3);
  CHECK(ch.count_roots(Rat(1), Rat(2)) == 1);  // half-open (1,2] counts the root at 2
  CHECK(ch.count_roots(Rat(3, 2), Rat(5, 2)) == 1);
  // no real roots
  CHECK(SturmChain(qp({1, 0, 1})).count_real_roots() == 0);
}

TEST_CASE("root isolation and refinement") {
  QPoly p = qp({-2, 0, 1});  // x^2 - 2
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 2);
  auto [lo, hi] = refine_root(p, roots[1].first, roots[1].second, Rat(1, 1000000));
  double x = Rat((lo + hi) / 2).get_d();
  CHECK(std::abs(x - std::sqrt(2.0)) < 1e-5);
}

TEST_CASE("smallest root in interval") {
  // roots 1/3 and 1/2: (3t-1)(2t-1) = 6t^2 - 5t + 1
  QPoly p = qp({1, -5, 6});
  auto b = smallest_root_in(p, Rat(0), Rat(1), Rat(1, 100000000));
  REQUIRE(b.has_value());
  CHECK(Rat(b->first) <= Rat(1, 3));
  CHECK(Rat(1, 3) <= Rat(b->second));
  // no roots in (0,1) for t^2 + 1
  CHECK(!smallest_root_in(qp({1, 0, 1}), Rat(0), Rat(1), Rat(1, 1000)).has_value());
  // root exactly at the right endpoint is excluded by openness
  CHECK(!smallest_root_in(qp({-1, 1}), Rat(0), Rat(1), Rat(1, 1000)).has_value());
}

TEST_CASE("zpoly gcd and exact division") {
  ZPoly a, b;
  a.c = {Int(-1), Int(0), Int(1)};  // t^2 - 1
  b.c = {Int(1), Int(1)};           // t + 1
  ZPoly g = zpoly_gcd(a, b);
  REQUIRE(g.degree() == 1);
  CHECK(zpoly_divexact(a, g).degree() == 1);
}

TEST_CASE("random gcd property") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int it = 0; it < 50; ++it) {
    QPoly a, b, g;
    for (int i = 0; i <= 3; ++i) a.c.push_back(Rat(coef(rng)));
    for (int i = 0; i <= 2; ++i) b.c.push_back(Rat(coef(rng)));
    for (int i = 0; i <= 2; ++i) g.c.push_back(Rat(coef(rng)));
    a.trim();
    b.trim();
    g.trim();
    if (a.is_zero() || b.is_zero() || g.degree() < 1) continue;
    QPoly d = qpoly_gcd(a * g, b * g);
    // g divides the gcd of (a g, b g)
    auto [q, r] = qpoly_divrem(d, g * (Rat(1) / g.lead()));
    (void)q;
    CHECK(r.is_zero());
  }
}
