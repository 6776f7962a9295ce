#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Data-parallel primitives underneath the solver. Every kernel exists in two
// forms: a plain serial reference (namespace serial) and an OpenMP version
// (namespace parallel). The unqualified entry points dispatch at runtime.
//
// Reductions accumulate fixed-size blocks in index order, so the parallel
// result is identical for any thread count (but may differ from the straight
// serial loop in the last bits).

namespace pdba::kernels {

inline constexpr std::size_t kBlockSize = 4096;

// Runtime switch for the dispatching entry points. Enabled by default when
// compiled with OpenMP.
void set_parallel(bool on);
bool parallel_enabled();

namespace serial {

double dot(std::span<const double> a, std::span<const double> b);
double sum_abs(std::span<const double> a);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double group_norm_sum(std::span<const double> a, std::size_t group_size);

void copy(std::span<const double> x, std::span<double> out);
void fill(std::span<double> out, double value);
void scale(double alpha, std::span<const double> x, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<const double> y,
          std::span<double> out);
void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y);
void sub(std::span<const double> a, std::span<const double> b, std::span<double> out);
void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out);
void clamp(std::span<const double> x, double lo, double hi, std::span<double> out);

void group_soft_threshold(std::span<const double> x, std::size_t group_size,
                          double threshold, std::span<double> out);
void mask_scale(std::span<const double> x, std::span<const std::uint8_t> kept,
                std::size_t channels, std::span<double> out);

// Forward differences with replicate-edge boundary (zero difference at the
// last row/column). Input is channel-planar, output is pixel-major groups of
// 2*channels values: horizontal diffs for each channel, then vertical.
void grad_forward(std::span<const double> p, int height, int width, int channels,
                  std::span<double> out);
void grad_adjoint(std::span<const double> y, int height, int width, int channels,
                  std::span<double> out);

}  // namespace serial

namespace parallel {

double dot(std::span<const double> a, std::span<const double> b);
double sum_abs(std::span<const double> a);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double group_norm_sum(std::span<const double> a, std::size_t group_size);

void copy(std::span<const double> x, std::span<double> out);
void fill(std::span<double> out, double value);
void scale(double alpha, std::span<const double> x, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<const double> y,
          std::span<double> out);
void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y);
void sub(std::span<const double> a, std::span<const double> b, std::span<double> out);
void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out);
void clamp(std::span<const double> x, double lo, double hi, std::span<double> out);

void group_soft_threshold(std::span<const double> x, std::size_t group_size,
                          double threshold, std::span<double> out);
void mask_scale(std::span<const double> x, std::span<const std::uint8_t> kept,
                std::size_t channels, std::span<double> out);

void grad_forward(std::span<const double> p, int height, int width, int channels,
                  std::span<double> out);
void grad_adjoint(std::span<const double> y, int height, int width, int channels,
                  std::span<double> out);

}  // namespace parallel

double dot(std::span<const double> a, std::span<const double> b);
double sum_abs(std::span<const double> a);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double group_norm_sum(std::span<const double> a, std::size_t group_size);

void copy(std::span<const double> x, std::span<double> out);
void fill(std::span<double> out, double value);
void scale(double alpha, std::span<const double> x, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<const double> y,
          std::span<double> out);
void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y);
void sub(std::span<const double> a, std::span<const double> b, std::span<double> out);
void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out);
void clamp(std::span<const double> x, double lo, double hi, std::span<double> out);

void group_soft_threshold(std::span<const double> x, std::size_t group_size,
                          double threshold, std::span<double> out);
void mask_scale(std::span<const double> x, std::span<const std::uint8_t> kept,
                std::size_t channels, std::span<double> out);

void grad_forward(std::span<const double> p, int height, int width, int channels,
                  std::span<double> out);
void grad_adjoint(std::span<const double> y, int height, int width, int channels,
                  std::span<double> out);

}  // namespace pdba::kernels
