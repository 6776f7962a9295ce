#pragma once

#include <cstddef>
#include <vector>

// Elements of the product space H x G. The primal part may concatenate
// several sub-blocks; block boundaries are owned by the problem description,
// the point itself is just two flat arrays. The inner product is the sum of
// the blockwise Euclidean inner products.

namespace pdba {

struct PrimalDualPoint {
  std::vector<double> p;  // primal part (element of H)
  std::vector<double> v;  // dual part (element of G)

  PrimalDualPoint() = default;
  PrimalDualPoint(std::vector<double> primal, std::vector<double> dual)
      : p(std::move(primal)), v(std::move(dual)) {}

  static PrimalDualPoint zeros(std::size_t primal_dim, std::size_t dual_dim) {
    return {std::vector<double>(primal_dim, 0.0), std::vector<double>(dual_dim, 0.0)};
  }

  std::size_t dim() const { return p.size() + v.size(); }
  bool same_shape(const PrimalDualPoint& o) const {
    return p.size() == o.p.size() && v.size() == o.v.size();
  }
};

// Throws std::invalid_argument on shape mismatch.
double inner(const PrimalDualPoint& x, const PrimalDualPoint& y);
double norm_sq(const PrimalDualPoint& x);
double norm(const PrimalDualPoint& x);
double dist_sq(const PrimalDualPoint& x, const PrimalDualPoint& y);
double dist(const PrimalDualPoint& x, const PrimalDualPoint& y);

// y += alpha * x
void add_scaled(double alpha, const PrimalDualPoint& x, PrimalDualPoint& y);

PrimalDualPoint diff(const PrimalDualPoint& x, const PrimalDualPoint& y);

// tau*x + (1-tau)*y, tau validated to lie in [0,1].
PrimalDualPoint convex_combination(const PrimalDualPoint& x, const PrimalDualPoint& y,
                                   double tau);

// Scale-invariant equality test: ||x-y|| <= 1e-12 * (1 + ||x||).
bool approx_equal(const PrimalDualPoint& x, const PrimalDualPoint& y);

}  // namespace pdba
