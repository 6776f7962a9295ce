#pragma once

#include "pdba/point.hpp"

namespace pdba {

// Closed halfspace {x : <x|normal> <= offset}. A degenerate halfspace stands
// for the whole space (zero normal); projection and intersection routines
// skip it instead of dividing by a zero Gram entry.
struct Halfspace {
  PrimalDualPoint normal;
  double offset = 0.0;
  bool degenerate = false;

  // <x|normal> - offset; nonpositive inside. Degenerate halfspaces report 0.
  double violation(const PrimalDualPoint& x) const;
  bool contains(const PrimalDualPoint& x, double slack = 0.0) const;
};

// H(x,y) = {h : <h-y|x-y> <= 0}, the halfspace with y on its boundary whose
// outward normal points at x. H(x,x) is the whole space.
Halfspace halfspace_from_points(const PrimalDualPoint& x, const PrimalDualPoint& y);

}  // namespace pdba
