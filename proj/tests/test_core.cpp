#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "pdba/halfspace.hpp"
#include "pdba/point.hpp"

using pdba::convex_combination;
using pdba::Halfspace;
using pdba::halfspace_from_points;
using pdba::inner;
using pdba::norm;
using pdba::PrimalDualPoint;

namespace {

PrimalDualPoint random_point(std::mt19937_64& rng, std::size_t np, std::size_t nv,
                             double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  PrimalDualPoint x = PrimalDualPoint::zeros(np, nv);
  for (double& v : x.p) v = gauss(rng);
  for (double& v : x.v) v = gauss(rng);
  return x;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("inner product on blocks") {
  const PrimalDualPoint x{{1.0, 0.0}, {2.0}};
  const PrimalDualPoint y{{0.0, 1.0}, {3.0}};
  CHECK(inner(x, y) == doctest::Approx(6.0));

  const PrimalDualPoint z{{3.0}, {4.0}};
  CHECK(inner(z, z) == doctest::Approx(25.0));
  CHECK(norm(z) == doctest::Approx(5.0));
}

TEST_CASE("inner product rejects mismatched shapes") {
  const PrimalDualPoint x{{1.0, 2.0}, {3.0}};
  const PrimalDualPoint y{{1.0}, {3.0}};
  CHECK_THROWS_AS((void)inner(x, y), std::invalid_argument);
}

TEST_CASE("inner product symmetry, bilinearity and Cauchy-Schwarz") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 200; ++t) {
    const auto x = random_point(rng, 4, 3);
    const auto y = random_point(rng, 4, 3);
    const auto z = random_point(rng, 4, 3);
    CHECK(inner(x, y) == doctest::Approx(inner(y, x)));

    PrimalDualPoint xy = x;
    pdba::add_scaled(2.5, y, xy);  // x + 2.5 y
    CHECK(inner(xy, z) == doctest::Approx(inner(x, z) + 2.5 * inner(y, z)));

    CHECK(std::abs(inner(x, y)) <= norm(x) * norm(y) + 1e-12);
  }
}

TEST_CASE("halfspace from two points") {
  SUBCASE("axis aligned") {
    const PrimalDualPoint x{{2.0, 0.0}, {}};
    const PrimalDualPoint y{{0.0, 0.0}, {}};
    const Halfspace h = halfspace_from_points(x, y);
    REQUIRE(!h.degenerate);
    CHECK(h.normal.p[0] == doctest::Approx(2.0));
    CHECK(h.normal.p[1] == doctest::Approx(0.0));
    CHECK(h.offset == doctest::Approx(0.0));
    CHECK(h.contains(PrimalDualPoint{{-1.0, 5.0}, {}}));
    CHECK(!h.contains(PrimalDualPoint{{0.5, 0.0}, {}}));
  }
  SUBCASE("identical points give the whole space") {
    const PrimalDualPoint x{{1.0, 1.0}, {}};
    const Halfspace h = halfspace_from_points(x, x);
    CHECK(h.degenerate);
    CHECK(h.contains(PrimalDualPoint{{100.0, -100.0}, {}}));
  }
  SUBCASE("boundary point is a member") {
    const PrimalDualPoint x{{1.0, 1.0}, {}};
    const PrimalDualPoint y{{0.0, 1.0}, {}};
    const Halfspace h = halfspace_from_points(x, y);
    CHECK(h.contains(PrimalDualPoint{{0.0, 1.0}, {}}, 1e-15));
  }
}

TEST_CASE("halfspace geometry: y on boundary, x strictly outside") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_point(rng, 3, 2);
    const auto y = random_point(rng, 3, 2);
    const Halfspace h = halfspace_from_points(x, y);
    if (h.degenerate) continue;
    CHECK(std::abs(h.violation(y)) <= 1e-9 * (1.0 + std::abs(h.offset)));
    CHECK(h.violation(x) > 0.0);  // equals ||x-y||^2
  }
}

TEST_CASE("convex combination endpoints and midpoint") {
  const PrimalDualPoint x{{2.0, 0.0}, {}};
  const PrimalDualPoint y{{0.0, 2.0}, {}};
  CHECK(convex_combination(x, y, 1.0).p == x.p);
  CHECK(convex_combination(x, y, 0.0).p == y.p);
  const auto mid = convex_combination(x, y, 0.5);
  CHECK(mid.p[0] == doctest::Approx(1.0));
  CHECK(mid.p[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)convex_combination(x, y, 1.5), std::invalid_argument);
  CHECK_THROWS_AS((void)convex_combination(x, y, -0.1), std::invalid_argument);
}

TEST_CASE("combined halfspace contains the intersection") {
  // h in H(x,u) cap H(x,v)  implies  h in H(x, tau*u + (1-tau)*v).
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int hits = 0;
  for (int t = 0; t < 2000 && hits < 300; ++t) {
    const auto x = random_point(rng, 3, 2);
    const auto u = random_point(rng, 3, 2);
    const auto v = random_point(rng, 3, 2);
    const auto h = random_point(rng, 3, 2, 2.0);
    const Halfspace hu = halfspace_from_points(x, u);
    const Halfspace hv = halfspace_from_points(x, v);
    if (!hu.contains(h) || !hv.contains(h)) continue;
    ++hits;
    for (double tau : {0.0, 0.17, 0.5, 0.83, 1.0}) {
      const Halfspace hc =
          halfspace_from_points(x, convex_combination(u, v, tau));
      CHECK(hc.contains(h, 1e-9 * (1.0 + std::abs(hc.offset))));
    }
  }
  CHECK(hits >= 100);
}

}  // TEST_SUITE
