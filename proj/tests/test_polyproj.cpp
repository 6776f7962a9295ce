#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pdba/polyproj.hpp"

using pdba::gram_assemble;
using pdba::Halfspace;
using pdba::halfspace_from_points;
using pdba::PrimalDualPoint;
using pdba::project_haugazeau;
using pdba::project_onto_intersection;
using pdba::SubsetCertificate;

namespace {

PrimalDualPoint random_point(std::mt19937_64& rng, std::size_t np, std::size_t nv,
                             double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  PrimalDualPoint x = PrimalDualPoint::zeros(np, nv);
  for (double& v : x.p) v = gauss(rng);
  for (double& v : x.v) v = gauss(rng);
  return x;
}

Halfspace make_halfspace(std::vector<double> n, double offset) {
  Halfspace h;
  h.normal = PrimalDualPoint{std::move(n), {}};
  h.offset = offset;
  return h;
}

}  // namespace

TEST_SUITE("polyproj") {

TEST_CASE("single halfspace orthogonal drop") {
  const auto h = make_halfspace({1.0, 0.0}, 0.0);
  const PrimalDualPoint x{{2.0, 3.0}, {}};
  const auto proj = project_onto_intersection(x, {h});
  CHECK(proj.p[0] == doctest::Approx(0.0));
  CHECK(proj.p[1] == doctest::Approx(3.0));
}

TEST_CASE("two orthogonal halfspaces meet at the corner") {
  const auto h1 = make_halfspace({1.0, 0.0}, 0.0);
  const auto h2 = make_halfspace({0.0, 1.0}, 0.0);
  const PrimalDualPoint x{{1.0, 1.0}, {}};
  SubsetCertificate cert;
  const auto proj = project_onto_intersection(x, {h1, h2}, &cert);
  CHECK(proj.p[0] == doctest::Approx(0.0));
  CHECK(proj.p[1] == doctest::Approx(0.0));
  REQUIRE(cert.subset.size() == 2);
  CHECK(cert.coeffs[0] == doctest::Approx(1.0));
  CHECK(cert.coeffs[1] == doctest::Approx(1.0));
}

TEST_CASE("interior point is returned unchanged") {
  const auto h1 = make_halfspace({1.0, 0.0}, 1.0);
  const auto h2 = make_halfspace({0.0, 1.0}, 1.0);
  const PrimalDualPoint x{{0.25, -0.5}, {}};
  SubsetCertificate cert;
  const auto proj = project_onto_intersection(x, {h1, h2}, &cert);
  CHECK(proj.p == x.p);
  CHECK(cert.subset.empty());
}

TEST_CASE("single active constraint matches the plain ratio") {
  // For |I| = 1 the solved coefficient is w_i / <u_i|u_i>, the cofactor
  // formula after dividing by det G_II.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto inst = oracles::random_instance(rng, 3, 2, 1);
    const auto gs = gram_assemble(inst.x, inst.halfspaces);
    if (gs.w[0] <= 0.0) continue;
    SubsetCertificate cert;
    (void)project_onto_intersection(inst.x, inst.halfspaces, &cert);
    REQUIRE(cert.subset == std::vector<std::size_t>{0});
    CHECK(cert.coeffs[0] == doctest::Approx(gs.w[0] / gs.gram[0]));
  }
}

TEST_CASE("gram assembly") {
  SUBCASE("orthonormal normals give the identity") {
    const auto h1 = make_halfspace({1.0, 0.0}, 0.3);
    const auto h2 = make_halfspace({0.0, 1.0}, -0.7);
    const PrimalDualPoint x{{2.0, 3.0}, {}};
    const auto gs = gram_assemble(x, {h1, h2});
    CHECK(gs.gram[0] == doctest::Approx(1.0));
    CHECK(gs.gram[1] == doctest::Approx(0.0));
    CHECK(gs.gram[2] == doctest::Approx(0.0));
    CHECK(gs.gram[3] == doctest::Approx(1.0));
    CHECK(gs.w[0] == doctest::Approx(2.0 - 0.3));
    CHECK(gs.w[1] == doctest::Approx(3.0 + 0.7));
  }
  SUBCASE("collinear normals give a singular gram matrix") {
    const auto h1 = make_halfspace({1.0, 2.0}, 0.0);
    const auto h2 = make_halfspace({2.0, 4.0}, 0.0);
    const PrimalDualPoint x{{1.0, 1.0}, {}};
    const auto gs = gram_assemble(x, {h1, h2});
    const double det = gs.gram[0] * gs.gram[3] - gs.gram[1] * gs.gram[2];
    CHECK(std::abs(det) <= 1e-10 * gs.gram[0] * gs.gram[3]);
  }
  SUBCASE("gram matrices are positive semidefinite (2x2 criterion)") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
      const auto inst = oracles::random_instance(rng, 4, 3, 2);
      const auto gs = gram_assemble(inst.x, inst.halfspaces);
      CHECK(gs.gram[0] >= -1e-10);
      CHECK(gs.gram[3] >= -1e-10);
      const double det = gs.gram[0] * gs.gram[3] - gs.gram[1] * gs.gram[2];
      CHECK(det >= -1e-10 * (1.0 + gs.gram[0] * gs.gram[3]));
    }
  }
  SUBCASE("gram matrices are positive semidefinite (3x3 leading minors)") {
    std::mt19937_64 rng(18);
    for (int t = 0; t < 100; ++t) {
      const auto inst = oracles::random_instance(rng, 4, 3, 3);
      const auto gs = gram_assemble(inst.x, inst.halfspaces);
      auto g = [&](int i, int j) { return gs.gram[i * 3 + j]; };
      const double m1 = g(0, 0);
      const double m2 = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
      const double m3 = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
                        g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
                        g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
      const double scale = 1.0 + g(0, 0) * g(1, 1) * g(2, 2);
      CHECK(m1 >= -1e-10 * scale);
      CHECK(m2 >= -1e-10 * scale);
      CHECK(m3 >= -1e-10 * scale);
    }
  }
}

TEST_CASE("random instances match the enumeration oracle") {
  std::mt19937_64 rng(2024);
  int dykstra_checks = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t m = 1 + t % 3;
    const auto inst = oracles::random_instance(rng, 3, 2, m);
    const auto proj = project_onto_intersection(inst.x, inst.halfspaces);

    const auto flat_hs = oracles::flatten(inst.halfspaces);
    const auto expect = oracles::project_enumerate(oracles::flatten(inst.x), flat_hs);
    REQUIRE(!expect.empty());
    CHECK(std::sqrt(oracles::vdist_sq(oracles::flatten(proj), expect)) <= 1e-8);

    if (t % 40 == 0) {
      // Iterative cross-check of the oracle itself.
      const auto dyk =
          oracles::project_dykstra(oracles::flatten(inst.x), flat_hs, 3000);
      CHECK(std::sqrt(oracles::vdist_sq(dyk, expect)) <= 1e-5);
      ++dykstra_checks;
    }
  }
  CHECK(dykstra_checks >= 10);
}

TEST_CASE("projection properties on random instances") {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + t % 3;
    const auto inst = oracles::random_instance(rng, 3, 2, m);
    const auto proj = project_onto_intersection(inst.x, inst.halfspaces);

    // Feasibility.
    for (const auto& h : inst.halfspaces)
      CHECK(h.violation(proj) <= 1e-9 * (1.0 + std::abs(h.offset)));

    // Idempotence.
    const auto again = project_onto_intersection(proj, inst.halfspaces);
    CHECK(pdba::dist(again, proj) <= 1e-10);

    // Variational characterization against random feasible points: z built
    // by blending toward the witness stays feasible for halfspaces.
    const PrimalDualPoint gap = pdba::diff(inst.x, proj);
    for (int s = 0; s < 10; ++s) {
      auto z = inst.witness;
      std::normal_distribution<double> gauss(0.0, 0.3);
      // small perturbations of the witness that remain feasible are kept
      PrimalDualPoint cand = z;
      for (double& v : cand.p) v += gauss(rng);
      for (double& v : cand.v) v += gauss(rng);
      bool ok = true;
      for (const auto& h : inst.halfspaces) ok = ok && h.contains(cand, 0.0);
      if (!ok) continue;
      CHECK(pdba::inner(pdba::diff(cand, proj), gap) <= 1e-9);
    }
  }
}

TEST_CASE("firm nonexpansiveness of the projector") {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + t % 3;
    const auto inst = oracles::random_instance(rng, 3, 2, m);
    const auto other = random_point(rng, 3, 2, 2.0);
    const auto px = project_onto_intersection(inst.x, inst.halfspaces);
    const auto py = project_onto_intersection(other, inst.halfspaces);
    const auto dp = pdba::diff(px, py);
    const auto dx = pdba::diff(inst.x, other);
    CHECK(pdba::norm_sq(dp) <= pdba::inner(dp, dx) + 1e-9);
  }
}

TEST_CASE("degenerate halfspaces are skipped") {
  const PrimalDualPoint x{{2.0, 3.0}, {}};
  Halfspace whole;
  whole.normal = PrimalDualPoint{{0.0, 0.0}, {}};
  whole.degenerate = true;
  const auto h = make_halfspace({1.0, 0.0}, 0.0);
  const auto proj = project_onto_intersection(x, {whole, h});
  CHECK(proj.p[0] == doctest::Approx(0.0));
  CHECK(proj.p[1] == doctest::Approx(3.0));
  const auto only_whole = project_onto_intersection(x, {whole});
  CHECK(only_whole.p == x.p);
}

TEST_CASE("infeasible intersection raises with diagnostics") {
  // {x1 <= -1} and {-x1 <= -1} cannot both hold.
  const auto h1 = make_halfspace({1.0, 0.0}, -1.0);
  const auto h2 = make_halfspace({-1.0, 0.0}, -1.0);
  const PrimalDualPoint x{{0.0, 0.0}, {}};
  CHECK_THROWS_AS((void)project_onto_intersection(x, {h1, h2}),
                  pdba::InfeasibleProjectionError);
  try {
    (void)project_onto_intersection(x, {h1, h2});
  } catch (const pdba::InfeasibleProjectionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("G =") != std::string::npos);
    CHECK(msg.find("w =") != std::string::npos);
  }
}

TEST_CASE("scheme-generated triples: reduced search matches full enumeration") {
  std::mt19937_64 rng(808);
  int triples = 0, excluded_checked = 0;
  for (int variant = 1; variant <= 3; ++variant) {
    for (int rep = 0; rep < 12; ++rep) {
      const auto run = oracles::random_scheme_run(rng, 3, 2, 25, variant);
      const auto x0_flat = oracles::flatten(run.x0);
      for (const auto& step : run.steps) {
        const auto full = project_onto_intersection(run.x0, step.triple);
        CHECK(pdba::dist(step.projected, full) <= 1e-10);

        // The witness stands in for the solution set: it must be feasible
        // for every halfspace the scheme generated.
        for (const auto& h : step.triple)
          CHECK(h.contains(run.witness, 1e-9 * (1.0 + std::abs(h.offset))));

        const auto flat_hs = oracles::flatten(step.triple);
        if (flat_hs.size() == 3) {
          ++triples;
          CHECK(!oracles::subset_certifies(x0_flat, flat_hs, {0}));
          CHECK(!oracles::subset_certifies(x0_flat, flat_hs, {2}));
          CHECK(!oracles::subset_certifies(x0_flat, flat_hs, {0, 2}));
          ++excluded_checked;
        }
      }
    }
  }
  CHECK(triples >= 300);
  CHECK(excluded_checked == triples);
}

TEST_CASE("haugazeau projection identity cases") {
  std::mt19937_64 rng(4242);
  const auto x0 = random_point(rng, 3, 2);

  SUBCASE("feasible point is fixed") {
    // x0 lies in H(x0, x0)=whole space and in halfspaces it satisfies.
    auto far = x0;
    far.p[0] += 5.0;
    const Halfspace h = halfspace_from_points(far, x0);  // x0 on the boundary
    const auto proj = project_haugazeau(x0, {halfspace_from_points(x0, x0), h});
    CHECK(pdba::dist(proj, x0) <= 1e-12);
  }

  SUBCASE("two-halfspace classical step") {
    const auto xn = random_point(rng, 3, 2);
    auto xhalf = xn;
    const auto dir = random_point(rng, 3, 2, 0.5);
    pdba::add_scaled(1.0, dir, xhalf);
    std::vector<Halfspace> hs = {halfspace_from_points(x0, xn),
                                 halfspace_from_points(xn, xhalf)};
    if (!hs[0].degenerate && !hs[1].degenerate) {
      const auto reduced = project_haugazeau(x0, hs);
      const auto full = project_onto_intersection(x0, hs);
      CHECK(pdba::dist(reduced, full) <= 1e-10);
    }
  }
}

}  // TEST_SUITE
