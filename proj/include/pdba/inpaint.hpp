#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdba/image.hpp"
#include "pdba/linop.hpp"
#include "pdba/problem.hpp"
#include "pdba/solver.hpp"

// End-to-end total-variation inpainting: degrade an image with a random
// keep/drop pixel mask, recover it by solving
//
//   min  iota_{y}(L1 p) + iota_{[0,1]}(p) + omega * ||L2 p||_{2,1}
//
// with L1 the mask and L2 the discrete gradient (an M=1, K=2 instance), and
// report per-iteration metrics.

namespace pdba {

struct ExperimentSpec {
  std::string image_path;
  double kappa = 0.4;  // fraction of missing pixels, [0,1)
  std::uint64_t seed = 1;
  // TV weight. The default is calibrated on the bundled synthetic scene so
  // that the memoryless and memory variants stop at matching quality under
  // the relative-change rule; override per image via --omega.
  double omega = 0.12;
  SolverConfig solver;
  std::string metrics_out;  // per-iteration CSV; empty = none
  std::string recon_out;    // reconstruction image; empty = none
  bool compare = false;     // also run the memoryless baseline to compute ItR
};

// true = pixel kept. Exactly floor(kappa * pixel_count) pixels are dropped,
// chosen by a seeded Fisher-Yates shuffle of the pixel indices; the same
// pixel is missing in every channel.
std::vector<std::uint8_t> make_mask(std::size_t pixel_count, double kappa,
                                    std::uint64_t seed);

struct AssembledProblem {
  ProblemInstance problem;
  std::vector<double> y;  // masked observation, channel-planar
  PrimalDualPoint x0;     // [y, L1 y, L2 y]
  std::vector<std::uint8_t> kept;
  std::shared_ptr<LinOp> mask;
  std::shared_ptr<LinOp> grad;
};

AssembledProblem assemble_problem(const ExperimentSpec& spec, const Image& image);

struct ExperimentReport {
  int iters = 0;
  double snr = 0.0;
  double tv = 0.0;
  double residue = 0.0;
  std::optional<double> itr;  // iterations / iterations(C0), compare mode only
  Termination status = Termination::Running;
};

// Loads the image from spec.image_path and runs the experiment.
ExperimentReport run_experiment(const ExperimentSpec& spec);

// Same, on an already-loaded ground-truth image.
ExperimentReport run_on_image(const ExperimentSpec& spec, const Image& truth);

}  // namespace pdba
