#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pdba/diagnostics.hpp"
#include "pdba/halfspace.hpp"
#include "pdba/problem.hpp"

// The iterative schemes. Each iteration builds a separating halfspace H_n
// from proximal points (the cut), relaxes the current iterate onto it
// (Fejerian step), and then either keeps that point (Fejer mode) or projects
// the starting point x0 onto H(x0,x_n) intersected with a memory set C_n
// (Haugazeau step). The memory variants differ only in C_n:
//
//   C0: H(x_n, x_{n+1/2})
//   C1: H(x_n, x_{n+1/2}) cap H(x_{n-1}, x_{n-1+1/2})
//   C2: H(x_n, x_{n+1/2}) cap H(x_0, x_{n-1})
//   C3: H(x_n, x_{n+1/2}) cap H(x_0, tau*x_n + (1-tau)*x_{n-1})
//
// All variants collapse to C0 at n = 0.

namespace pdba {

enum class Variant { Fejer, C0, C1, C2, C3 };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);  // "fejer", "c0".."c3"

struct SolverConfig {
  Variant variant = Variant::C0;
  double lambda = 1.0;  // relaxation; (0,1] for best approximation, (0,2) for Fejer
  double gamma = 1.0;   // primal prox parameter
  double mu = 1.0;      // dual prox parameter
  double tau = 0.5;     // C3 combination weight, (0,1)
  // Optional per-iteration schedules; when set they override the constants.
  std::function<double(int)> lambda_schedule, gamma_schedule, mu_schedule, tau_schedule;
  double eps_tol = 1e-2;
  int max_iters = 10000;
  bool track_attraction = false;
  // The stopping test uses the primal block only; this switch adds the dual.
  bool tolerance_on_dual = false;

  void validate() const;
  double lambda_at(int n) const;
  double gamma_at(int n) const;
  double mu_at(int n) const;
  double tau_at(int n) const;
};

// One separating cut: blockwise proximal points a_i, b_k together with the
// subgradients certifying them, and the halfspace
//   H_n = {h : <h|s*> <= eta},  s* = (a* + L* b*, b - L a),
//   eta = <a|a*> + <b|b*>,
// which contains the whole solution set.
struct FejerCut {
  std::vector<double> primal;          // a, concatenated over blocks
  std::vector<double> primal_subgrad;  // a*, a*_i in df_i(a_i)
  std::vector<double> dual;            // b
  std::vector<double> dual_subgrad;    // b*, b*_k in dg_k(b_k)
  Halfspace halfspace;
  double normal_norm_sq = 0.0;  // ||s*||^2
};

struct SolverState {
  PrimalDualPoint x0;
  PrimalDualPoint x_prev;       // x_{n-1}
  PrimalDualPoint x_half_prev;  // x_{n-1+1/2}
  PrimalDualPoint x_half;       // x_{n+1/2}, scratch for the iteration in progress
  PrimalDualPoint x_cur;        // x_n
  int n = 0;
  Termination status = Termination::Running;
};

// Called after each completed iteration with the post-update state (x_prev
// holds x_n, x_half_prev holds x_{n+1/2}, x_cur holds x_{n+1}); also once
// with cut == nullptr for the terminal record. The observer may fill the
// optional metric fields of the record but must not mutate solver state.
using Observer =
    std::function<void(int n, const SolverState&, const FejerCut* cut, TraceRecord&)>;

FejerCut fejer_cut(const ProblemInstance& problem, const PrimalDualPoint& x,
                   double gamma, double mu);

// x + lambda * (P_{H_n}(x) - x). Requires a nonzero cut normal.
PrimalDualPoint fejer_step(const PrimalDualPoint& x, const FejerCut& cut,
                           double lambda);

// The memory set C_n as a halfspace list, first entry H(x_n, x_{n+1/2})
// (reads state.x_cur and state.x_half). A degenerate memory halfspace is
// dropped; at n = 0 every variant yields the single halfspace H(x0, x_{1/2}).
std::vector<Halfspace> memory_set(Variant variant, const SolverState& state,
                                  double tau);

// x_{n+1} = P_{H(x0,x_n) cap C_n}(x0).
PrimalDualPoint haugazeau_step(const SolverState& state,
                               const std::vector<Halfspace>& cn);

// Runs the configured scheme from x0. Stops on an exactly-zero cut normal, on
// the relative primal change staying under eps_tol for two successive
// iterations, or on max_iters.
std::pair<PrimalDualPoint, SolveTrace> solve(const ProblemInstance& problem,
                                             const PrimalDualPoint& x0,
                                             const SolverConfig& config,
                                             const Observer& observer = nullptr);

}  // namespace pdba
