#include "pdba/inpaint.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pdba/diagnostics.hpp"
#include "pdba/kernels.hpp"
#include "pdba/prox.hpp"

namespace pdba {

std::vector<std::uint8_t> make_mask(std::size_t pixel_count, double kappa,
                                    std::uint64_t seed) {
  if (!(kappa >= 0.0 && kappa < 1.0))
    throw std::invalid_argument("kappa must lie in [0,1)");
  const std::size_t missing =
      static_cast<std::size_t>(std::floor(kappa * static_cast<double>(pixel_count)));

  std::vector<std::size_t> idx(pixel_count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Hand-rolled Fisher-Yates: identical masks for a given seed on every
  // platform, unlike std::shuffle/std::uniform_int_distribution.
  std::mt19937_64 rng(seed);
  for (std::size_t i = pixel_count; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(idx[i - 1], idx[j]);
  }

  std::vector<std::uint8_t> kept(pixel_count, 1);
  for (std::size_t i = 0; i < missing; ++i) kept[idx[i]] = 0;
  return kept;
}

AssembledProblem assemble_problem(const ExperimentSpec& spec, const Image& image) {
  if (spec.omega < 0.0) throw std::invalid_argument("omega must be >= 0");
  const std::size_t d = image.pixel_count();
  const int channels = image.channels;
  const std::size_t primal_dim = d * channels;
  const std::size_t grad_dim = 2 * primal_dim;

  AssembledProblem ap;
  ap.kept = make_mask(d, spec.kappa, spec.seed);
  ap.mask = mask_op(ap.kept, channels);
  ap.grad = gradient_op(image.height, image.width, channels);

  ap.y.assign(primal_dim, 0.0);
  ap.mask->apply(image.data, ap.y);

  ap.problem.fs = {std::make_shared<BoxProx>(primal_dim, 0.0, 1.0)};
  ap.problem.gs = {std::make_shared<PointIndicatorProx>(ap.y),
                   std::make_shared<GroupL2Prox>(grad_dim, 2 * channels, spec.omega)};
  ap.problem.L = {{ap.mask, ap.grad}};
  ap.problem.finalize();

  ap.x0 = ap.problem.make_point();
  kernels::copy(ap.y, ap.x0.p);
  auto v1 = ap.problem.dual_block(ap.x0, 0);
  auto v2 = ap.problem.dual_block(ap.x0, 1);
  ap.mask->apply(ap.y, v1);
  ap.grad->apply(ap.y, v2);
  return ap;
}

namespace {

struct Metrics {
  double snr, tv, residue;
};

Metrics compute_metrics(const AssembledProblem& ap, const Image& truth, double omega,
                        double kept_fraction, std::span<const double> p) {
  Metrics m{};
  m.snr = snr_db(truth.data, p);
  std::vector<double> grad(ap.grad->codomain_dim());
  ap.grad->apply(p, grad);
  m.tv = prox_value_tv(grad, 2 * static_cast<std::size_t>(truth.channels), omega);
  m.residue = residue_l1(ap.y, *ap.mask, p, kept_fraction, truth.pixel_count());
  return m;
}

int run_once(const ExperimentSpec& spec, const Image& truth, const AssembledProblem& ap,
             const SolverConfig& config, const std::string& csv_path,
             PrimalDualPoint* final_point, Termination* status) {
  const double kept_fraction =
      static_cast<double>(std::count(ap.kept.begin(), ap.kept.end(), std::uint8_t{1})) /
      static_cast<double>(ap.kept.size());

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw ImageIoError(csv_path + ": cannot open for writing");
    write_csv_header(csv);
  }

  Observer observer = [&](int, const SolverState& state, const FejerCut*,
                          TraceRecord& rec) {
    // The record describes iterate x_n = rec.iter; after an iteration the
    // state has advanced, so that point sits in x_prev.
    const PrimalDualPoint& at = state.n == rec.iter ? state.x_cur : state.x_prev;
    const Metrics m = compute_metrics(ap, truth, spec.omega, kept_fraction, at.p);
    rec.snr = m.snr;
    rec.tv = m.tv;
    rec.residue_l1 = m.residue;
    if (csv.is_open()) write_csv_row(csv, rec);
  };

  auto [xfinal, trace] = solve(ap.problem, ap.x0, config, observer);
  if (final_point) *final_point = std::move(xfinal);
  if (status) *status = trace.status;
  return trace.iterations;
}

}  // namespace

ExperimentReport run_on_image(const ExperimentSpec& spec, const Image& truth) {
  const AssembledProblem ap = assemble_problem(spec, truth);
  const double kept_fraction =
      static_cast<double>(std::count(ap.kept.begin(), ap.kept.end(), std::uint8_t{1})) /
      static_cast<double>(ap.kept.size());

  std::optional<int> baseline_iters;
  if (spec.compare) {
    SolverConfig baseline = spec.solver;
    baseline.variant = Variant::C0;
    baseline.track_attraction = false;
    baseline_iters = run_once(spec, truth, ap, baseline, "", nullptr, nullptr);
  }

  PrimalDualPoint xfinal;
  Termination status = Termination::Running;
  const int iters =
      run_once(spec, truth, ap, spec.solver, spec.metrics_out, &xfinal, &status);

  if (!spec.recon_out.empty()) {
    Image recon = truth;  // dimensions, channels, format and max value
    recon.data = xfinal.p;
    save_image(recon, spec.recon_out);
  }

  ExperimentReport report;
  report.iters = iters;
  report.status = status;
  const Metrics m = compute_metrics(ap, truth, spec.omega, kept_fraction, xfinal.p);
  report.snr = m.snr;
  report.tv = m.tv;
  report.residue = m.residue;
  if (baseline_iters)
    report.itr = *baseline_iters > 0
                     ? static_cast<double>(iters) / *baseline_iters
                     : std::numeric_limits<double>::quiet_NaN();
  return report;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  const Image truth = load_image(spec.image_path);
  return run_on_image(spec, truth);
}

}  // namespace pdba
