#include "pdba/diagnostics.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "pdba/halfspace.hpp"
#include "pdba/kernels.hpp"
#include "pdba/polyproj.hpp"

namespace pdba {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Running: return "running";
    case Termination::ExactZero: return "exact_zero";
    case Termination::Tolerance: return "tolerance";
    case Termination::MaxIters: return "max_iters";
  }
  return "unknown";
}

std::pair<double, double> ball_bound(const PrimalDualPoint& x0,
                                     const PrimalDualPoint& xn,
                                     const PrimalDualPoint& solution) {
  const double four_r_sq = dist_sq(x0, solution);  // (2r)^2 with r = dist/2
  const double bn = four_r_sq - dist_sq(xn, x0);
  return {bn, dist_sq(xn, solution)};
}

std::pair<PrimalDualPoint, double> attraction_gain(const PrimalDualPoint& x0,
                                                   const PrimalDualPoint& x_prev,
                                                   const PrimalDualPoint& x_half_prev,
                                                   const PrimalDualPoint& x_cur) {
  PrimalDualPoint q = project_haugazeau(
      x0, {halfspace_from_points(x0, x_prev),
           halfspace_from_points(x_prev, x_half_prev)});
  const double gain = dist_sq(x_cur, q);
#ifndef NDEBUG
  const double lhs = dist_sq(x0, x_cur);
  const double rhs = dist_sq(x0, q) + gain;
  assert(lhs >= rhs - 1e-8 * (1.0 + lhs));
#endif
  return {std::move(q), gain};
}

double snr_db(std::span<const double> reference, std::span<const double> estimate) {
  if (reference.size() != estimate.size())
    throw std::invalid_argument("snr: shape mismatch");
  const double ref_sq = kernels::dot(reference, reference);
  if (ref_sq == 0.0) throw std::invalid_argument("snr: zero reference signal");
  const double err_sq = kernels::sum_sq_diff(reference, estimate);
  if (err_sq == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ref_sq / err_sq);
}

double residue_l1(std::span<const double> y, const LinOp& mask,
                  std::span<const double> p, double kept_fraction,
                  std::size_t pixel_count) {
  if (y.size() != mask.codomain_dim() || p.size() != mask.domain_dim())
    throw std::invalid_argument("residue_l1: shape mismatch");
  std::vector<double> masked(mask.codomain_dim());
  mask.apply(p, masked);
  kernels::axpy_inplace(-1.0, y, masked);  // masked = L1 p - y
  const double l1 = kernels::sum_abs(masked);
  const std::size_t channels = y.size() / pixel_count;
  return l1 / (kept_fraction * static_cast<double>(channels * pixel_count));
}

namespace {

void put(std::ostream& os, const std::optional<double>& v) {
  os << ',';
  if (!v) return;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", *v);
  os << buf;
}

}  // namespace

void write_csv_header(std::ostream& os) {
  os << "# snr = 20*log10(norm(reference)/norm(reference-estimate)) [dB]\n";
  os << "iter,dist_x0,neg_dist_sq,step_norm,half_step_norm,cut_residual,"
        "attraction_gain,snr,tv,residue_l1\n";
}

void write_csv_row(std::ostream& os, const TraceRecord& r) {
  char buf[40];
  os << r.iter;
  std::snprintf(buf, sizeof buf, "%.9g", r.dist_x0);
  os << ',' << buf;
  std::snprintf(buf, sizeof buf, "%.9g", r.neg_dist_sq);
  os << ',' << buf;
  put(os, r.step_norm);
  put(os, r.half_step_norm);
  put(os, r.cut_residual);
  put(os, r.attraction_gain);
  put(os, r.snr);
  put(os, r.tv);
  put(os, r.residue_l1);
  os << '\n';
}

}  // namespace pdba
