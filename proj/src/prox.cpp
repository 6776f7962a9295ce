#include "pdba/prox.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdba/kernels.hpp"

namespace pdba {

namespace {

void require_gamma(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("prox parameter gamma must be > 0");
}

void require_dim(std::size_t expected, std::size_t got) {
  if (expected != got) throw std::invalid_argument("prox input has wrong dimension");
}

}  // namespace

BoxProx::BoxProx(std::size_t dim, double lo, double hi) : dim_(dim), lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw std::invalid_argument("box bounds require lo < hi");
}

void BoxProx::apply(std::span<const double> x, double gamma,
                    std::span<double> out) const {
  require_gamma(gamma);
  require_dim(dim_, x.size());
  kernels::clamp(x, lo_, hi_, out);
}

std::optional<double> BoxProx::value(std::span<const double> x) const {
  for (double v : x)
    if (v < lo_ || v > hi_) return std::numeric_limits<double>::infinity();
  return 0.0;
}

PointIndicatorProx::PointIndicatorProx(std::vector<double> target)
    : target_(std::move(target)) {}

void PointIndicatorProx::apply(std::span<const double> x, double gamma,
                               std::span<double> out) const {
  require_gamma(gamma);
  require_dim(target_.size(), x.size());
  kernels::copy(target_, out);
}

std::optional<double> PointIndicatorProx::value(std::span<const double> x) const {
  require_dim(target_.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != target_[i]) return std::numeric_limits<double>::infinity();
  return 0.0;
}

GroupL2Prox::GroupL2Prox(std::size_t dim, std::size_t group_size, double weight)
    : dim_(dim), group_size_(group_size), weight_(weight) {
  if (group_size == 0 || dim % group_size != 0)
    throw std::invalid_argument("group size must divide the dimension");
  if (weight < 0.0) throw std::invalid_argument("group-l2 weight must be >= 0");
}

void GroupL2Prox::apply(std::span<const double> x, double gamma,
                        std::span<double> out) const {
  require_gamma(gamma);
  require_dim(dim_, x.size());
  kernels::group_soft_threshold(x, group_size_, gamma * weight_, out);
}

std::optional<double> GroupL2Prox::value(std::span<const double> x) const {
  require_dim(dim_, x.size());
  return weight_ * kernels::group_norm_sum(x, group_size_);
}

SoftAbsProx::SoftAbsProx(std::vector<double> center, double weight)
    : center_(std::move(center)), weight_(weight) {
  if (weight < 0.0) throw std::invalid_argument("soft-abs weight must be >= 0");
}

void SoftAbsProx::apply(std::span<const double> x, double gamma,
                        std::span<double> out) const {
  require_gamma(gamma);
  require_dim(center_.size(), x.size());
  const double t = gamma * weight_;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - center_[i];
    const double shrunk = std::abs(d) <= t ? 0.0 : d - std::copysign(t, d);
    out[i] = center_[i] + shrunk;
  }
}

std::optional<double> SoftAbsProx::value(std::span<const double> x) const {
  require_dim(center_.size(), x.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - center_[i]);
  return weight_ * s;
}

std::vector<double> prox_box(std::span<const double> x, double lo, double hi,
                             double gamma) {
  std::vector<double> out(x.size());
  BoxProx(x.size(), lo, hi).apply(x, gamma, out);
  return out;
}

std::vector<double> prox_point_indicator(std::span<const double> x,
                                         std::span<const double> target, double gamma) {
  require_gamma(gamma);
  if (x.size() != target.size())
    throw std::invalid_argument("prox input has wrong dimension");
  return {target.begin(), target.end()};
}

std::vector<double> prox_group_l2(std::span<const double> x, std::size_t group_size,
                                  double weight, double gamma) {
  std::vector<double> out(x.size());
  GroupL2Prox(x.size(), group_size, weight).apply(x, gamma, out);
  return out;
}

double prox_value_tv(std::span<const double> grouped, std::size_t group_size,
                     double weight) {
  if (group_size == 0 || grouped.size() % group_size != 0)
    throw std::invalid_argument("group size must divide the dimension");
  return weight * kernels::group_norm_sum(grouped, group_size);
}

}  // namespace pdba
