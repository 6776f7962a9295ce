#include "pdba/halfspace.hpp"

namespace pdba {

double Halfspace::violation(const PrimalDualPoint& x) const {
  if (degenerate) return 0.0;
  return inner(x, normal) - offset;
}

bool Halfspace::contains(const PrimalDualPoint& x, double slack) const {
  return degenerate || violation(x) <= slack;
}

Halfspace halfspace_from_points(const PrimalDualPoint& x, const PrimalDualPoint& y) {
  Halfspace h;
  h.normal = diff(x, y);
  if (approx_equal(x, y)) {
    h.degenerate = true;
    h.offset = 0.0;
    return h;
  }
  h.offset = inner(y, h.normal);
  return h;
}

}  // namespace pdba
