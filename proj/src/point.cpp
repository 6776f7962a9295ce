#include "pdba/point.hpp"

#include <cmath>
#include <stdexcept>

#include "pdba/kernels.hpp"

namespace pdba {

namespace {

void require_same_shape(const PrimalDualPoint& x, const PrimalDualPoint& y) {
  if (!x.same_shape(y))
    throw std::invalid_argument("primal-dual points have mismatched shapes");
}

}  // namespace

double inner(const PrimalDualPoint& x, const PrimalDualPoint& y) {
  require_same_shape(x, y);
  return kernels::dot(x.p, y.p) + kernels::dot(x.v, y.v);
}

double norm_sq(const PrimalDualPoint& x) {
  return kernels::dot(x.p, x.p) + kernels::dot(x.v, x.v);
}

double norm(const PrimalDualPoint& x) { return std::sqrt(norm_sq(x)); }

double dist_sq(const PrimalDualPoint& x, const PrimalDualPoint& y) {
  require_same_shape(x, y);
  return kernels::sum_sq_diff(x.p, y.p) + kernels::sum_sq_diff(x.v, y.v);
}

double dist(const PrimalDualPoint& x, const PrimalDualPoint& y) {
  return std::sqrt(dist_sq(x, y));
}

void add_scaled(double alpha, const PrimalDualPoint& x, PrimalDualPoint& y) {
  require_same_shape(x, y);
  kernels::axpy_inplace(alpha, x.p, y.p);
  kernels::axpy_inplace(alpha, x.v, y.v);
}

PrimalDualPoint diff(const PrimalDualPoint& x, const PrimalDualPoint& y) {
  require_same_shape(x, y);
  PrimalDualPoint out = PrimalDualPoint::zeros(x.p.size(), x.v.size());
  kernels::sub(x.p, y.p, out.p);
  kernels::sub(x.v, y.v, out.v);
  return out;
}

PrimalDualPoint convex_combination(const PrimalDualPoint& x, const PrimalDualPoint& y,
                                   double tau) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("convex combination weight must lie in [0,1]");
  require_same_shape(x, y);
  PrimalDualPoint out = PrimalDualPoint::zeros(x.p.size(), x.v.size());
  kernels::lerp(x.p, y.p, tau, out.p);
  kernels::lerp(x.v, y.v, tau, out.v);
  return out;
}

bool approx_equal(const PrimalDualPoint& x, const PrimalDualPoint& y) {
  return dist(x, y) <= 1e-12 * (1.0 + norm(x));
}

}  // namespace pdba
