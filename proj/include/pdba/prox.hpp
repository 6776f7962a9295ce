#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

// Proximity operators for the functions the solver composes. A ProxFn is a
// proper convex lsc function represented operationally: apply() evaluates
// prox_{gamma f}. value() optionally reports f itself for diagnostics.

namespace pdba {

class ProxFn {
 public:
  virtual ~ProxFn() = default;

  virtual std::size_t dim() const = 0;

  // out = prox_{gamma f}(x), gamma > 0.
  virtual void apply(std::span<const double> x, double gamma,
                     std::span<double> out) const = 0;

  virtual std::optional<double> value(std::span<const double> /*x*/) const {
    return std::nullopt;
  }
};

// Indicator of the box [lo,hi]^n; prox is the componentwise clamp.
class BoxProx final : public ProxFn {
 public:
  BoxProx(std::size_t dim, double lo, double hi);
  std::size_t dim() const override { return dim_; }
  void apply(std::span<const double> x, double gamma,
             std::span<double> out) const override;
  std::optional<double> value(std::span<const double> x) const override;

 private:
  std::size_t dim_;
  double lo_, hi_;
};

// Indicator of the singleton {target}; prox returns target regardless of the
// input or of gamma.
class PointIndicatorProx final : public ProxFn {
 public:
  explicit PointIndicatorProx(std::vector<double> target);
  std::size_t dim() const override { return target_.size(); }
  void apply(std::span<const double> x, double gamma,
             std::span<double> out) const override;
  std::optional<double> value(std::span<const double> x) const override;

 private:
  std::vector<double> target_;
};

// weight * sum over groups of the Euclidean norm (isotropic TV once composed
// with a gradient operator); prox is groupwise shrinkage.
class GroupL2Prox final : public ProxFn {
 public:
  GroupL2Prox(std::size_t dim, std::size_t group_size, double weight);
  std::size_t dim() const override { return dim_; }
  std::size_t group_size() const { return group_size_; }
  double weight() const { return weight_; }
  void apply(std::span<const double> x, double gamma,
             std::span<double> out) const override;
  std::optional<double> value(std::span<const double> x) const override;

 private:
  std::size_t dim_, group_size_;
  double weight_;
};

// weight * sum_i |x_i - center_i|; prox is componentwise soft thresholding
// toward the center.
class SoftAbsProx final : public ProxFn {
 public:
  SoftAbsProx(std::vector<double> center, double weight);
  std::size_t dim() const override { return center_.size(); }
  void apply(std::span<const double> x, double gamma,
             std::span<double> out) const override;
  std::optional<double> value(std::span<const double> x) const override;

 private:
  std::vector<double> center_;
  double weight_;
};

std::vector<double> prox_box(std::span<const double> x, double lo, double hi,
                             double gamma);
std::vector<double> prox_point_indicator(std::span<const double> x,
                                         std::span<const double> target, double gamma);
std::vector<double> prox_group_l2(std::span<const double> x, std::size_t group_size,
                                  double weight, double gamma);

// weight * sum over groups of the group Euclidean norm; the reporting-side
// value of the isotropic TV functional.
double prox_value_tv(std::span<const double> grouped, std::size_t group_size,
                     double weight);

}  // namespace pdba
