#include "pdba/linop.hpp"

#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pdba/kernels.hpp"

namespace pdba {

namespace {

class MaskOp final : public LinOp {
 public:
  MaskOp(std::vector<std::uint8_t> kept, std::size_t channels)
      : kept_(std::move(kept)), channels_(channels) {}
  std::size_t domain_dim() const override { return kept_.size() * channels_; }
  std::size_t codomain_dim() const override { return domain_dim(); }
  void apply(std::span<const double> x, std::span<double> y) const override {
    kernels::mask_scale(x, kept_, channels_, y);
  }
  void adjoint(std::span<const double> y, std::span<double> x) const override {
    kernels::mask_scale(y, kept_, channels_, x);
  }

 private:
  std::vector<std::uint8_t> kept_;
  std::size_t channels_;
};

class GradientOp final : public LinOp {
 public:
  GradientOp(int height, int width, int channels)
      : height_(height), width_(width), channels_(channels) {
    if (height < 1 || width < 1 || channels < 1)
      throw std::invalid_argument("gradient operator needs positive dimensions");
  }
  std::size_t domain_dim() const override {
    return static_cast<std::size_t>(height_) * width_ * channels_;
  }
  std::size_t codomain_dim() const override { return 2 * domain_dim(); }
  void apply(std::span<const double> x, std::span<double> y) const override {
    kernels::grad_forward(x, height_, width_, channels_, y);
  }
  void adjoint(std::span<const double> y, std::span<double> x) const override {
    kernels::grad_adjoint(y, height_, width_, channels_, x);
  }

 private:
  int height_, width_, channels_;
};

class IdentityOp final : public LinOp {
 public:
  explicit IdentityOp(std::size_t n) : n_(n) {}
  std::size_t domain_dim() const override { return n_; }
  std::size_t codomain_dim() const override { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const override {
    kernels::copy(x, y);
  }
  void adjoint(std::span<const double> y, std::span<double> x) const override {
    kernels::copy(y, x);
  }

 private:
  std::size_t n_;
};

class ZeroOp final : public LinOp {
 public:
  ZeroOp(std::size_t domain, std::size_t codomain) : dom_(domain), codom_(codomain) {}
  std::size_t domain_dim() const override { return dom_; }
  std::size_t codomain_dim() const override { return codom_; }
  void apply(std::span<const double>, std::span<double> y) const override {
    kernels::fill(y, 0.0);
  }
  void adjoint(std::span<const double>, std::span<double> x) const override {
    kernels::fill(x, 0.0);
  }

 private:
  std::size_t dom_, codom_;
};

class VStackOp final : public LinOp {
 public:
  explicit VStackOp(std::vector<std::shared_ptr<LinOp>> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw std::invalid_argument("vstack needs at least one operator");
    dom_ = ops_.front()->domain_dim();
    codom_ = 0;
    for (const auto& op : ops_) {
      if (op->domain_dim() != dom_)
        throw std::invalid_argument("vstack operators must share the domain");
      codom_ += op->codomain_dim();
    }
  }
  std::size_t domain_dim() const override { return dom_; }
  std::size_t codomain_dim() const override { return codom_; }
  void apply(std::span<const double> x, std::span<double> y) const override {
    std::size_t at = 0;
    for (const auto& op : ops_) {
      op->apply(x, y.subspan(at, op->codomain_dim()));
      at += op->codomain_dim();
    }
  }
  void adjoint(std::span<const double> y, std::span<double> x) const override {
    kernels::fill(x, 0.0);
    std::vector<double> tmp(dom_);
    std::size_t at = 0;
    for (const auto& op : ops_) {
      op->adjoint(y.subspan(at, op->codomain_dim()), tmp);
      kernels::axpy_inplace(1.0, tmp, x);
      at += op->codomain_dim();
    }
  }

 private:
  std::vector<std::shared_ptr<LinOp>> ops_;
  std::size_t dom_ = 0, codom_ = 0;
};

}  // namespace

std::shared_ptr<LinOp> mask_op(std::vector<std::uint8_t> kept, std::size_t channels) {
  return std::make_shared<MaskOp>(std::move(kept), channels);
}

std::shared_ptr<LinOp> gradient_op(int height, int width, int channels) {
  return std::make_shared<GradientOp>(height, width, channels);
}

std::shared_ptr<LinOp> identity_op(std::size_t n) {
  return std::make_shared<IdentityOp>(n);
}

std::shared_ptr<LinOp> zero_op(std::size_t domain, std::size_t codomain) {
  return std::make_shared<ZeroOp>(domain, codomain);
}

std::shared_ptr<LinOp> vstack_op(std::vector<std::shared_ptr<LinOp>> ops) {
  return std::make_shared<VStackOp>(std::move(ops));
}

double adjoint_check(const LinOp& op, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("adjoint_check needs trials >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(op.domain_dim()), y(op.codomain_dim());
  std::vector<double> lx(op.codomain_dim()), lty(op.domain_dim());
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (double& v : x) v = gauss(rng);
    for (double& v : y) v = gauss(rng);
    op.apply(x, lx);
    op.adjoint(y, lty);
    const double lhs = kernels::dot(lx, y);
    const double rhs = kernels::dot(x, lty);
    const double nx = std::sqrt(kernels::dot(x, x));
    const double ny = std::sqrt(kernels::dot(y, y));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + nx * ny));
  }
  return worst;
}

}  // namespace pdba
