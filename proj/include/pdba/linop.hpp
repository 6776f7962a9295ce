#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

// Matrix-free bounded linear operators with adjoints. Nothing here ever
// materializes a dense matrix; tests that need one build it by applying the
// operator to basis vectors.

namespace pdba {

class LinOp {
 public:
  virtual ~LinOp() = default;
  virtual std::size_t domain_dim() const = 0;
  virtual std::size_t codomain_dim() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  virtual void adjoint(std::span<const double> y, std::span<double> x) const = 0;
};

// Diagonal 0/1 keep-mask over channel-planar image data: entry (c*D + i) is
// kept iff pixel i is kept, for every channel c. Self-adjoint, idempotent.
std::shared_ptr<LinOp> mask_op(std::vector<std::uint8_t> kept, std::size_t channels);

// Forward-difference gradient with replicate-edge boundary. Domain is a
// channel-planar image, codomain is pixel-major groups of 2*channels
// (horizontal diffs per channel, then vertical). Adjoint is the negative
// divergence with matching boundary handling; constant images map to zero.
std::shared_ptr<LinOp> gradient_op(int height, int width, int channels);

std::shared_ptr<LinOp> identity_op(std::size_t n);
std::shared_ptr<LinOp> zero_op(std::size_t domain, std::size_t codomain);

// Stack codomains: y = [A1 x; A2 x; ...]; all operators share the domain.
std::shared_ptr<LinOp> vstack_op(std::vector<std::shared_ptr<LinOp>> ops);

// Max over random trials of |<Lx|y> - <x|L*y>| / (1 + ||x|| ||y||).
double adjoint_check(const LinOp& op, int trials, std::uint64_t seed);

}  // namespace pdba
