#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "pdba/prox.hpp"

using pdba::BoxProx;
using pdba::GroupL2Prox;
using pdba::PointIndicatorProx;
using pdba::prox_box;
using pdba::prox_group_l2;
using pdba::prox_point_indicator;
using pdba::prox_value_tv;
using pdba::SoftAbsProx;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  std::vector<double> v(n);
  for (double& x : v) x = gauss(rng);
  return v;
}

double vdot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> vsub(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// 1-D line search oracle for the group shrinkage: minimize over s >= 0 of
// t*s*||z|| + 0.5*(1-s)^2*||z||^2 by golden-section search.
double shrink_scale_oracle(double znorm, double threshold) {
  auto obj = [&](double s) {
    return threshold * s * znorm + 0.5 * (1.0 - s) * (1.0 - s) * znorm * znorm;
  };
  double lo = 0.0, hi = 1.0;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
  for (int it = 0; it < 200; ++it) {
    if (obj(a) < obj(b))
      hi = b, b = a, a = hi - phi * (hi - lo);
    else
      lo = a, a = b, b = lo + phi * (hi - lo);
  }
  return 0.5 * (lo + hi);
}

// Per-coordinate 1-D oracle for the box prox: dense scan of the objective
// 0.5*(x-y)^2 over a fine grid clipped to the box.
double box_prox_oracle(double x, double lo, double hi) {
  double best = lo, best_val = 0.5 * (x - lo) * (x - lo);
  const int steps = 20000;
  for (int i = 0; i <= steps; ++i) {
    const double y = lo + (hi - lo) * i / steps;
    const double val = 0.5 * (x - y) * (x - y);
    if (val < best_val) {
      best_val = val;
      best = y;
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("prox") {

TEST_CASE("box prox clamps") {
  const std::vector<double> x = {-0.5, 0.3, 1.7};
  const auto out = prox_box(x, 0.0, 1.0, 1.0);
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(0.3));
  CHECK(out[2] == doctest::Approx(1.0));

  const std::vector<double> inside = {0.2, 0.8};
  CHECK(prox_box(inside, 0.0, 1.0, 0.7) == inside);

  CHECK_THROWS_AS((void)prox_box(x, 1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)prox_box(x, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("box prox agrees with the 1-D scan oracle") {
  std::mt19937_64 rng(21);
  const auto x = random_vec(20, rng, 1.5);
  const auto out = prox_box(x, -0.4, 0.9, 2.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(out[i] ==
          doctest::Approx(box_prox_oracle(x[i], -0.4, 0.9)).epsilon(1e-4).scale(1.0));
}

TEST_CASE("point indicator prox returns the target") {
  const std::vector<double> y = {1.0, -2.0, 0.5};
  std::mt19937_64 rng(3);
  const auto x = random_vec(3, rng);
  CHECK(prox_point_indicator(x, y, 1.0) == y);
  CHECK(prox_point_indicator(y, y, 1.0) == y);
  // gamma independence
  CHECK(prox_point_indicator(x, y, 0.005) == prox_point_indicator(x, y, 1.5));
}

TEST_CASE("group shrinkage") {
  SUBCASE("below threshold collapses to zero") {
    const std::vector<double> z = {3.0, 4.0};
    const auto out = prox_group_l2(z, 2, 5.0, 1.0);
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(0.0));
  }
  SUBCASE("above threshold shrinks radially") {
    const std::vector<double> z = {3.0, 4.0};
    const auto out = prox_group_l2(z, 2, 1.0, 1.0);
    CHECK(out[0] == doctest::Approx(2.4));
    CHECK(out[1] == doctest::Approx(3.2));
    // the optimum scale from the 1-D search oracle: s = 1 - t/||z||
    const double s = shrink_scale_oracle(5.0, 1.0);
    CHECK(s == doctest::Approx(0.8).epsilon(1e-6));
  }
  SUBCASE("zero weight is the identity") {
    std::mt19937_64 rng(5);
    const auto x = random_vec(12, rng);
    CHECK(prox_group_l2(x, 3, 0.0, 2.0) == x);
  }
}

TEST_CASE("tv value") {
  const std::vector<double> constant_grads(10, 0.0);
  CHECK(prox_value_tv(constant_grads, 2, 1.0) == doctest::Approx(0.0));

  const std::vector<double> single = {3.0, 4.0};
  CHECK(prox_value_tv(single, 2, 1.0) == doctest::Approx(5.0));
  CHECK(prox_value_tv(single, 2, 2.0) == doctest::Approx(2.0 * prox_value_tv(single, 2, 1.0)));
}

TEST_CASE("firm nonexpansiveness of every prox") {
  std::mt19937_64 rng(77);
  const BoxProx box(8, 0.0, 1.0);
  const PointIndicatorProx pt(random_vec(8, rng));
  const GroupL2Prox grp(8, 2, 0.3);
  const SoftAbsProx abs(random_vec(8, rng), 0.7);
  const pdba::ProxFn* proxes[] = {&box, &pt, &grp, &abs};

  std::vector<double> px(8), py(8);
  for (int t = 0; t < 1000; ++t) {
    const auto x = random_vec(8, rng, 2.0);
    const auto y = random_vec(8, rng, 2.0);
    const double gamma = 0.05 + (t % 10) * 0.3;
    for (const auto* f : proxes) {
      f->apply(x, gamma, px);
      f->apply(y, gamma, py);
      const auto dp = vsub(px, py);
      const auto dx = vsub(x, y);
      CHECK(vdot(dp, dp) <= vdot(dp, dx) + 1e-9);
    }
  }
}

TEST_CASE("group shrinkage satisfies the prox optimality condition") {
  // At a nonzero output y: gamma*omega*y_d/||y_d|| + y_d - x_d = 0.
  std::mt19937_64 rng(88);
  for (int t = 0; t < 200; ++t) {
    const auto x = random_vec(6, rng, 2.0);
    const double omega = 0.4, gamma = 1.3;
    const auto y = prox_group_l2(x, 3, omega, gamma);
    for (std::size_t g = 0; g < 2; ++g) {
      double nrm = 0.0;
      for (std::size_t j = 0; j < 3; ++j) nrm += y[3 * g + j] * y[3 * g + j];
      nrm = std::sqrt(nrm);
      if (nrm == 0.0) continue;
      for (std::size_t j = 0; j < 3; ++j) {
        const double r = gamma * omega * y[3 * g + j] / nrm + y[3 * g + j] - x[3 * g + j];
        CHECK(std::abs(r) <= 1e-9);
      }
    }
  }
}

TEST_CASE("indicator proxes ignore gamma") {
  std::mt19937_64 rng(99);
  const BoxProx box(8, -1.0, 1.0);
  std::vector<double> a(8), b(8);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_vec(8, rng, 2.0);
    box.apply(x, 0.005, a);
    box.apply(x, 1.5, b);
    CHECK(a == b);
  }
}

TEST_CASE("soft-abs prox moves toward its center by at most the threshold") {
  const SoftAbsProx f({2.0}, 1.0);
  std::vector<double> out(1);
  f.apply(std::vector<double>{0.0}, 1.0, out);
  CHECK(out[0] == doctest::Approx(1.0));  // step of gamma toward 2
  f.apply(std::vector<double>{1.8}, 1.0, out);
  CHECK(out[0] == doctest::Approx(2.0));  // inside the threshold, snaps
  f.apply(std::vector<double>{5.0}, 0.5, out);
  CHECK(out[0] == doctest::Approx(4.5));
}

}  // TEST_SUITE
