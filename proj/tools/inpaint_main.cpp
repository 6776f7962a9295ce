#include <cmath>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdba/image.hpp"
#include "pdba/inpaint.hpp"
#include "pdba/polyproj.hpp"

namespace {

// Exit codes: 0 success, 2 invalid arguments, 3 I/O failure, 4 numerical
// breakdown.
constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total-variation image inpainting via the primal-dual "
               "best-approximation solver"};
  app.set_config("--config", "", "Configuration file (key=value lines)");

  pdba::ExperimentSpec spec;
  std::string variant = "c0";
  double lambda = 1.0, gamma = 0.005, mu = 0.005, tau = 0.5, eps = 1e-2;
  int max_iters = 100000;
  bool track_attraction = false;

  app.add_option("--image", spec.image_path, "Input image (PGM/PPM; PNG if built in)")
      ->required();
  app.add_option("--kappa", spec.kappa, "Fraction of missing pixels in [0,1)")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", spec.seed, "Mask RNG seed");
  app.add_option("--gamma", gamma, "Primal prox parameter");
  app.add_option("--mu", mu, "Dual prox parameter");
  app.add_option("--lambda", lambda, "Relaxation parameter");
  app.add_option("--tau", tau, "Memory combination weight for variant c3");
  app.add_option("--eps", eps, "Relative-change termination tolerance");
  app.add_option("--variant", variant, "Solver variant")
      ->check(CLI::IsMember({"fejer", "c0", "c1", "c2", "c3"}));
  app.add_option("--omega", spec.omega, "Total-variation weight");
  app.add_option("--max-iters", max_iters, "Iteration cap");
  app.add_option("--metrics-out", spec.metrics_out, "Per-iteration metrics CSV path");
  app.add_option("--recon-out", spec.recon_out, "Reconstruction image path");
  app.add_flag("--track-attraction", track_attraction,
               "Record the attraction gain each iteration");
  app.add_flag("--compare", spec.compare,
               "Also run the memoryless baseline on the same mask and report ItR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadArgs;  // --help and friends exit cleanly
  }

  try {
    spec.solver.variant = pdba::variant_from_string(variant);
    spec.solver.lambda = lambda;
    spec.solver.gamma = gamma;
    spec.solver.mu = mu;
    spec.solver.tau = tau;
    spec.solver.eps_tol = eps;
    spec.solver.max_iters = max_iters;
    spec.solver.track_attraction = track_attraction;
    spec.solver.validate();
    if (!(spec.kappa >= 0.0 && spec.kappa < 1.0))
      throw std::invalid_argument("kappa must lie in [0,1)");
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitBadArgs;
  }

  try {
    const pdba::ExperimentReport report = pdba::run_experiment(spec);
    nlohmann::ordered_json summary;
    summary["iters"] = report.iters;
    summary["snr"] = report.snr;
    summary["tv"] = report.tv;
    summary["residue"] = report.residue;
    summary["itr"] = nullptr;
    if (report.itr && std::isfinite(*report.itr)) summary["itr"] = *report.itr;
    std::cout << summary.dump() << "\n";
    return 0;
  } catch (const pdba::ImageIoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const pdba::InfeasibleProjectionError& e) {
    std::cerr << "numerical breakdown: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
