#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "pdba/diagnostics.hpp"
#include "pdba/inpaint.hpp"
#include "pdba/polyproj.hpp"
#include "pdba/solver.hpp"
#include "toy.hpp"

using pdba::attraction_gain;
using pdba::ball_bound;
using pdba::residue_l1;
using pdba::snr_db;
using pdba::solve;
using pdba::SolverConfig;
using pdba::TraceRecord;
using pdba::Variant;

TEST_SUITE("diagnostics") {

TEST_CASE("ball bound endpoints") {
  const auto x0 = toy::start(0.0, 0.0);
  const auto sol = toy::solution();

  auto [b_at_start, d_at_start] = ball_bound(x0, x0, sol);
  CHECK(b_at_start == doctest::Approx(pdba::dist_sq(x0, sol)));
  CHECK(d_at_start == doctest::Approx(pdba::dist_sq(x0, sol)));

  auto [b_at_sol, d_at_sol] = ball_bound(x0, sol, sol);
  CHECK(b_at_sol == doctest::Approx(0.0));
  CHECK(d_at_sol == doctest::Approx(0.0));
}

TEST_CASE("ball bound holds along a toy run") {
  const auto problem = toy::make_problem();
  const auto sol = toy::solution();
  SolverConfig cfg;
  cfg.variant = Variant::C1;
  cfg.gamma = cfg.mu = 1.0;
  cfg.eps_tol = 1e-12;
  cfg.max_iters = 2000;
  const auto x0 = toy::start(0.0, 0.0);

  double prev_b = std::numeric_limits<double>::infinity();
  double prev_dist = -1.0;
  pdba::Observer obs = [&](int, const pdba::SolverState& st, const pdba::FejerCut*,
                           TraceRecord& rec) {
    const double d = pdba::dist(st.x_cur, st.x0);
    auto [b, dsq] = ball_bound(st.x0, st.x_cur, sol);
    CHECK(dsq <= b + 1e-9);
    CHECK(b <= prev_b + 1e-10);  // nonincreasing
    // strict progress when the iterate actually moved
    if (prev_dist >= 0.0 && d > prev_dist + 1e-8) CHECK(b < prev_b);
    prev_b = b;
    prev_dist = d;
    CHECK(rec.neg_dist_sq == doctest::Approx(-rec.dist_x0 * rec.dist_x0));
  };
  (void)solve(problem, x0, cfg, obs);
}

TEST_CASE("attraction gain is zero for the memoryless scheme") {
  const auto problem = toy::make_problem();
  SolverConfig cfg;
  cfg.variant = Variant::C0;
  cfg.track_attraction = true;
  cfg.eps_tol = 1e-10;
  cfg.max_iters = 500;
  auto [xf, trace] = solve(problem, toy::start(0.0, 0.0), cfg);
  int seen = 0;
  for (const auto& rec : trace.records)
    if (rec.attraction_gain) {
      CHECK(*rec.attraction_gain == 0.0);  // same projection, bitwise
      ++seen;
    }
  CHECK(seen >= 3);
}

TEST_CASE("attraction gain is nonnegative and sometimes positive with memory") {
  // The memory halfspace is typically active on an inpainting instance.
  const pdba::Image img = pdba::synthetic_image(10, 10);
  pdba::ExperimentSpec spec;
  spec.kappa = 0.4;
  spec.seed = 3;
  spec.omega = 0.05;
  const auto ap = pdba::assemble_problem(spec, img);
  SolverConfig cfg;
  cfg.variant = Variant::C1;
  cfg.gamma = cfg.mu = 0.005;
  cfg.track_attraction = true;
  cfg.eps_tol = 1e-12;
  cfg.max_iters = 120;
  auto [xf, trace] = solve(ap.problem, ap.x0, cfg);
  int positive = 0, seen = 0;
  for (const auto& rec : trace.records)
    if (rec.attraction_gain) {
      CHECK(*rec.attraction_gain >= 0.0);
      positive += *rec.attraction_gain > 0.0 ? 1 : 0;
      ++seen;
    }
  CHECK(seen >= 3);
  CHECK(positive >= 1);
}

TEST_CASE("attraction gain with a degenerate memory pair") {
  // x_prev == x_half_prev makes the second halfspace the whole space, so
  // q_n is the plain Haugazeau point; equal inputs give zero gain.
  const auto x0 = toy::start(0.0, 0.0);
  const auto xp = toy::start(0.5, -0.25);
  const auto q = pdba::project_haugazeau(
      x0, {pdba::halfspace_from_points(x0, xp)});
  auto [qn, gain] = attraction_gain(x0, xp, xp, q);
  CHECK(gain <= 1e-20);
}

TEST_CASE("attraction inequality on toy runs for all memory variants") {
  const auto problem = toy::make_problem();
  for (Variant v : {Variant::C1, Variant::C2, Variant::C3}) {
    CAPTURE(to_string(v));
    SolverConfig cfg;
    cfg.variant = v;
    cfg.gamma = cfg.mu = 0.3;
    cfg.lambda = 0.8;  // keep the sequence infinite
    cfg.track_attraction = true;
    cfg.eps_tol = 1e-12;
    cfg.max_iters = 800;
    const auto x0 = toy::start(-0.5, 0.5);

    pdba::Observer obs = [&](int n, const pdba::SolverState& st,
                             const pdba::FejerCut* cut, TraceRecord&) {
      if (!cut || st.n != n + 1 || st.n < 2) return;
      auto [qn, gain] = attraction_gain(st.x0, st.x_prev, st.x_half_prev, st.x_cur);
      const double lhs = pdba::dist_sq(st.x0, st.x_cur);
      const double rhs = pdba::dist_sq(st.x0, qn) + gain;
      CHECK(lhs >= rhs - 1e-8 * (1.0 + lhs));
    };
    (void)solve(problem, x0, cfg, obs);
  }
}

TEST_CASE("snr definition") {
  std::vector<double> ref = {3.0, 4.0};
  SUBCASE("exact match is the infinity sentinel") {
    CHECK(std::isinf(snr_db(ref, ref)));
  }
  SUBCASE("one tenth error is 20 dB") {
    // error vector with norm = 0.1 * ||ref||
    std::vector<double> est = {3.0 + 0.5, 4.0};  // ||err|| = 0.5 = 0.1*5
    CHECK(snr_db(ref, est) == doctest::Approx(20.0));
  }
  SUBCASE("one percent error is 40 dB") {
    std::vector<double> est = {3.0 + 0.05, 4.0};
    CHECK(snr_db(ref, est) == doctest::Approx(40.0));
  }
  SUBCASE("zero reference is rejected") {
    std::vector<double> zero = {0.0, 0.0};
    CHECK_THROWS_AS((void)snr_db(zero, ref), std::invalid_argument);
  }
}

TEST_CASE("l1 residue") {
  // 2x2 image, 3 channels, one missing pixel.
  std::vector<std::uint8_t> kept = {1, 1, 0, 1};
  const auto mask = pdba::mask_op(kept, 3);
  const double kept_fraction = 3.0 / 4.0;

  SUBCASE("reproducing y gives zero") {
    std::vector<double> p(12, 0.5), y(12);
    mask->apply(p, y);
    CHECK(residue_l1(y, *mask, p, kept_fraction, 4) == doctest::Approx(0.0));
  }
  SUBCASE("uniform error on kept entries averages to itself") {
    std::vector<double> truth(12, 0.5), y(12), p(12);
    mask->apply(truth, y);
    for (std::size_t i = 0; i < 12; ++i) p[i] = truth[i] + 0.004;
    CHECK(residue_l1(y, *mask, p, kept_fraction, 4) == doctest::Approx(0.004));
  }
  SUBCASE("matches a direct sum") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> y(12), p(12);
    for (double& v : y) v = gauss(rng);
    for (std::size_t i = 0; i < 4; ++i)
      if (!kept[i]) y[i] = y[4 + i] = y[8 + i] = 0.0;
    for (double& v : p) v = gauss(rng);
    double direct = 0.0;
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < 4; ++i)
        direct += kept[i] ? std::abs(y[c * 4 + i] - p[c * 4 + i]) : 0.0;
    direct /= kept_fraction * 12.0;
    CHECK(residue_l1(y, *mask, p, kept_fraction, 4) == doctest::Approx(direct));
  }
}

TEST_CASE("csv format") {
  std::ostringstream os;
  pdba::write_csv_header(os);
  TraceRecord rec;
  rec.iter = 3;
  rec.dist_x0 = 1.23456789123;
  rec.neg_dist_sq = -rec.dist_x0 * rec.dist_x0;
  rec.step_norm = 0.5;
  rec.snr = 21.5;
  pdba::write_csv_row(os, rec);

  const std::string out = os.str();
  CHECK(out.find("iter,dist_x0,neg_dist_sq,step_norm,half_step_norm,cut_residual,"
                 "attraction_gain,snr,tv,residue_l1\n") != std::string::npos);
  // 9 significant digits, empty optional fields stay empty
  CHECK(out.find("3,1.23456789,-1.52415788,0.5,,,,21.5,,\n") != std::string::npos);
  // metadata comment first
  CHECK(out.rfind("#", 0) == 0);
}

}  // TEST_SUITE
