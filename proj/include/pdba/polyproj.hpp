#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdba/halfspace.hpp"
#include "pdba/point.hpp"

// Closed-form projection onto an intersection of a few halfspaces.
//
// With G the Gram matrix of the normals and w_i = <x|u_i> - eta_i, the
// projection is x - sum_{i in I} nu_i u_i for the (unique) active subset I
// whose coefficients solve G_II nu = w_I with nu > 0 while all remaining
// constraints hold at the candidate point. Subsets are visited in a fixed
// ascending-cardinality order; for intersections with a nonempty interior at
// least one subset certifies. The projector step inside the solver only ever
// sees three specially structured halfspaces, for which the search shrinks
// to four candidate subsets (project_haugazeau).

namespace pdba {

struct GramSystem {
  std::size_t m = 0;
  std::vector<double> gram;  // m*m, row-major, gram[i*m+j] = <u_i|u_j>
  std::vector<double> w;     // w[i] = <x|u_i> - eta_i
};

// Active subset found by the search: coefficients for indices in the subset
// (positive up to tolerance) and constraint residuals at the candidate point
// for the indices outside it (nonpositive up to tolerance).
struct SubsetCertificate {
  std::vector<std::size_t> subset;
  std::vector<double> coeffs;
  std::vector<double> residuals;
};

class InfeasibleProjectionError : public std::runtime_error {
 public:
  explicit InfeasibleProjectionError(const std::string& what)
      : std::runtime_error(what) {}
};

// Requires all halfspaces non-degenerate.
GramSystem gram_assemble(const PrimalDualPoint& x, const std::vector<Halfspace>& hs);

// Euclidean projection of x onto the intersection of the given halfspaces
// (degenerate entries are ignored). The intersection must be nonempty; if no
// subset certifies, throws InfeasibleProjectionError with a dump of G and w.
// When `cert` is non-null and a subset search ran, it receives the accepted
// subset (empty subset when x was already feasible).
PrimalDualPoint project_onto_intersection(const PrimalDualPoint& x,
                                          const std::vector<Halfspace>& hs,
                                          SubsetCertificate* cert = nullptr);

// Same result as project_onto_intersection for the halfspace triple arising
// in the Haugazeau step, supplied in canonical order:
//   hs[0] = H(x0, x_n),  hs[1] = H(x_n, x_{n+1/2}),  hs[2] = memory halfspace
// (hs[2] absent for the memoryless variant). Only the subsets {2}, {1,2},
// {2,3}, {1,2,3} are searched; the remaining subsets {1}, {3}, {1,3} cannot
// certify for this structure and are asserted not to in debug builds.
PrimalDualPoint project_haugazeau(const PrimalDualPoint& x0,
                                  const std::vector<Halfspace>& hs);

}  // namespace pdba
