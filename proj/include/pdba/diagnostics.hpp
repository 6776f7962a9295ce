#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdba/linop.hpp"
#include "pdba/point.hpp"

// Convergence instrumentation: the per-iteration trace, the shrinking-ball
// bound around the solution, and the attraction gain comparing a memory
// iterate against the memoryless one.

namespace pdba {

enum class Termination { Running, ExactZero, Tolerance, MaxIters };

std::string to_string(Termination t);

struct TraceRecord {
  int iter = 0;
  double dist_x0 = 0.0;      // ||x_n - x_0||
  double neg_dist_sq = 0.0;  // -||x_n - x_0||^2
  std::optional<double> step_norm;       // ||x_{n+1} - x_n||
  std::optional<double> half_step_norm;  // ||x_{n+1/2} - x_n||
  std::optional<double> cut_residual;    // max(0, <x_n|s*> - eta) / ||s*||
  std::optional<double> attraction_gain; // ||x_n - q_n||^2
  std::optional<double> snr;
  std::optional<double> tv;
  std::optional<double> residue_l1;
};

struct SolveTrace {
  std::vector<TraceRecord> records;
  Termination status = Termination::Running;
  int iterations = 0;  // completed iterations
};

// b_n = 4r^2 - ||x_n - x_0||^2 with r = ||x_0 - solution|| / 2. Returns
// (b_n, ||x_n - solution||^2); the first bounds the second from above along
// any run of the best-approximation scheme.
std::pair<double, double> ball_bound(const PrimalDualPoint& x0,
                                     const PrimalDualPoint& xn,
                                     const PrimalDualPoint& solution);

// q_n = projection of x0 onto H(x0, x_prev) cap H(x_prev, x_half_prev), the
// iterate the memoryless scheme would have produced. Returns (q_n,
// ||x_cur - q_n||^2). The Pythagorean inequality
//   ||x0 - x_cur||^2 >= ||x0 - q_n||^2 + ||x_cur - q_n||^2
// holds up to roundoff and is asserted in debug builds.
std::pair<PrimalDualPoint, double> attraction_gain(const PrimalDualPoint& x0,
                                                   const PrimalDualPoint& x_prev,
                                                   const PrimalDualPoint& x_half_prev,
                                                   const PrimalDualPoint& x_cur);

// 20*log10(||reference|| / ||reference - estimate||) in dB; +infinity when
// the estimate matches the reference exactly. Throws on a zero reference.
double snr_db(std::span<const double> reference, std::span<const double> estimate);

// l1 norm of y - mask(p) averaged over the kept entries: divides by
// kept_fraction * channels * pixel_count.
double residue_l1(std::span<const double> y, const LinOp& mask,
                  std::span<const double> p, double kept_fraction,
                  std::size_t pixel_count);

// CSV schema: one comment line recording the SNR convention, then the header
// row. Floats carry 9 significant digits; absent optional fields stay empty.
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const TraceRecord& r);

}  // namespace pdba
