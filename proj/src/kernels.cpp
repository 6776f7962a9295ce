#include "pdba/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace pdba::kernels {

namespace {

#ifdef _OPENMP
bool g_parallel = true;
#else
bool g_parallel = false;
#endif

// Worth spinning up a parallel region only past this size.
constexpr std::size_t kParallelCutoff = 2 * kBlockSize;

[[maybe_unused]] inline std::size_t block_count(std::size_t n) {
  return (n + kBlockSize - 1) / kBlockSize;
}

}  // namespace

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() { return g_parallel; }

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sum_abs(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double group_norm_sum(std::span<const double> a, std::size_t group_size) {
  assert(group_size > 0 && a.size() % group_size == 0);
  double s = 0.0;
  for (std::size_t g = 0; g < a.size(); g += group_size) {
    double sq = 0.0;
    for (std::size_t j = 0; j < group_size; ++j) sq += a[g + j] * a[g + j];
    s += std::sqrt(sq);
  }
  return s;
}

void copy(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  std::copy(x.begin(), x.end(), out.begin());
}

void fill(std::span<double> out, double value) {
  std::fill(out.begin(), out.end(), value);
}

void scale(double alpha, std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
}

void axpy(double alpha, std::span<const double> x, std::span<const double> y,
          std::span<double> out) {
  assert(x.size() == y.size() && x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i] + y[i];
}

void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void sub(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
}

void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = t * a[i] + (1.0 - t) * b[i];
}

void clamp(std::span<const double> x, double lo, double hi, std::span<double> out) {
  assert(x.size() == out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], lo, hi);
}

void group_soft_threshold(std::span<const double> x, std::size_t group_size,
                          double threshold, std::span<double> out) {
  assert(group_size > 0 && x.size() % group_size == 0 && x.size() == out.size());
  for (std::size_t g = 0; g < x.size(); g += group_size) {
    double sq = 0.0;
    for (std::size_t j = 0; j < group_size; ++j) sq += x[g + j] * x[g + j];
    const double nrm = std::sqrt(sq);
    const double s = nrm > threshold ? 1.0 - threshold / nrm : 0.0;
    for (std::size_t j = 0; j < group_size; ++j) out[g + j] = s * x[g + j];
  }
}

void mask_scale(std::span<const double> x, std::span<const std::uint8_t> kept,
                std::size_t channels, std::span<double> out) {
  const std::size_t d = kept.size();
  assert(x.size() == d * channels && out.size() == x.size());
  for (std::size_t c = 0; c < channels; ++c)
    for (std::size_t i = 0; i < d; ++i)
      out[c * d + i] = kept[i] ? x[c * d + i] : 0.0;
}

void grad_forward(std::span<const double> p, int height, int width, int channels,
                  std::span<double> out) {
  const std::size_t d = static_cast<std::size_t>(height) * width;
  assert(p.size() == d * channels);
  assert(out.size() == 2 * d * channels);
  const std::size_t gs = 2 * static_cast<std::size_t>(channels);
  for (std::size_t pix = 0; pix < d; ++pix) {
    const int col = static_cast<int>(pix % width);
    const int row = static_cast<int>(pix / width);
    for (int c = 0; c < channels; ++c) {
      const std::size_t at = c * d + pix;
      out[pix * gs + c] = col + 1 < width ? p[at + 1] - p[at] : 0.0;
      out[pix * gs + channels + c] = row + 1 < height ? p[at + width] - p[at] : 0.0;
    }
  }
}

void grad_adjoint(std::span<const double> y, int height, int width, int channels,
                  std::span<double> out) {
  const std::size_t d = static_cast<std::size_t>(height) * width;
  assert(y.size() == 2 * d * channels);
  assert(out.size() == d * channels);
  const std::size_t gs = 2 * static_cast<std::size_t>(channels);
  for (std::size_t pix = 0; pix < d; ++pix) {
    const int col = static_cast<int>(pix % width);
    const int row = static_cast<int>(pix / width);
    for (int c = 0; c < channels; ++c) {
      double acc = 0.0;
      if (col > 0) acc += y[(pix - 1) * gs + c];
      if (col + 1 < width) acc -= y[pix * gs + c];
      if (row > 0) acc += y[(pix - width) * gs + channels + c];
      if (row + 1 < height) acc -= y[pix * gs + channels + c];
      out[c * d + pix] = acc;
    }
  }
}

}  // namespace serial

namespace parallel {

#ifdef _OPENMP

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t nb = block_count(a.size());
  if (nb <= 1) return serial::dot(a, b);
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nb); ++blk) {
    const std::size_t lo = blk * kBlockSize;
    const std::size_t hi = std::min(lo + kBlockSize, a.size());
    partial[blk] = serial::dot(a.subspan(lo, hi - lo), b.subspan(lo, hi - lo));
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

double sum_abs(std::span<const double> a) {
  const std::size_t nb = block_count(a.size());
  if (nb <= 1) return serial::sum_abs(a);
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nb); ++blk) {
    const std::size_t lo = blk * kBlockSize;
    const std::size_t hi = std::min(lo + kBlockSize, a.size());
    partial[blk] = serial::sum_abs(a.subspan(lo, hi - lo));
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t nb = block_count(a.size());
  if (nb <= 1) return serial::sum_sq_diff(a, b);
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nb); ++blk) {
    const std::size_t lo = blk * kBlockSize;
    const std::size_t hi = std::min(lo + kBlockSize, a.size());
    partial[blk] = serial::sum_sq_diff(a.subspan(lo, hi - lo), b.subspan(lo, hi - lo));
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

double group_norm_sum(std::span<const double> a, std::size_t group_size) {
  assert(group_size > 0 && a.size() % group_size == 0);
  const std::size_t groups = a.size() / group_size;
  const std::size_t per_block = std::max<std::size_t>(1, kBlockSize / group_size);
  const std::size_t nb = (groups + per_block - 1) / per_block;
  if (nb <= 1) return serial::group_norm_sum(a, group_size);
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nb); ++blk) {
    const std::size_t glo = blk * per_block;
    const std::size_t ghi = std::min(glo + per_block, groups);
    partial[blk] = serial::group_norm_sum(
        a.subspan(glo * group_size, (ghi - glo) * group_size), group_size);
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

void copy(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
    out[i] = x[i];
}

void fill(std::span<double> out, double value) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i)
    out[i] = value;
}

void scale(double alpha, std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
    out[i] = alpha * x[i];
}

void axpy(double alpha, std::span<const double> x, std::span<const double> y,
          std::span<double> out) {
  assert(x.size() == y.size() && x.size() == out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
    out[i] = alpha * x[i] + y[i];
}

void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
    y[i] += alpha * x[i];
}

void sub(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.size()); ++i)
    out[i] = a[i] - b[i];
}

void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.size()); ++i)
    out[i] = t * a[i] + (1.0 - t) * b[i];
}

void clamp(std::span<const double> x, double lo, double hi, std::span<double> out) {
  assert(x.size() == out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
    out[i] = std::clamp(x[i], lo, hi);
}

void group_soft_threshold(std::span<const double> x, std::size_t group_size,
                          double threshold, std::span<double> out) {
  assert(group_size > 0 && x.size() % group_size == 0 && x.size() == out.size());
  const std::ptrdiff_t groups = static_cast<std::ptrdiff_t>(x.size() / group_size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t g = 0; g < groups; ++g) {
    const std::size_t base = g * group_size;
    double sq = 0.0;
    for (std::size_t j = 0; j < group_size; ++j) sq += x[base + j] * x[base + j];
    const double nrm = std::sqrt(sq);
    const double s = nrm > threshold ? 1.0 - threshold / nrm : 0.0;
    for (std::size_t j = 0; j < group_size; ++j) out[base + j] = s * x[base + j];
  }
}

void mask_scale(std::span<const double> x, std::span<const std::uint8_t> kept,
                std::size_t channels, std::span<double> out) {
  const std::size_t d = kept.size();
  assert(x.size() == d * channels && out.size() == x.size());
#pragma omp parallel for schedule(static) collapse(2)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(channels); ++c)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(d); ++i)
      out[c * d + i] = kept[i] ? x[c * d + i] : 0.0;
}

void grad_forward(std::span<const double> p, int height, int width, int channels,
                  std::span<double> out) {
  const std::size_t d = static_cast<std::size_t>(height) * width;
  assert(p.size() == d * channels && out.size() == 2 * d * channels);
  const std::size_t gs = 2 * static_cast<std::size_t>(channels);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t pix = 0; pix < static_cast<std::ptrdiff_t>(d); ++pix) {
    const int col = static_cast<int>(pix % width);
    const int row = static_cast<int>(pix / width);
    for (int c = 0; c < channels; ++c) {
      const std::size_t at = c * d + pix;
      out[pix * gs + c] = col + 1 < width ? p[at + 1] - p[at] : 0.0;
      out[pix * gs + channels + c] = row + 1 < height ? p[at + width] - p[at] : 0.0;
    }
  }
}

void grad_adjoint(std::span<const double> y, int height, int width, int channels,
                  std::span<double> out) {
  const std::size_t d = static_cast<std::size_t>(height) * width;
  assert(y.size() == 2 * d * channels && out.size() == d * channels);
  const std::size_t gs = 2 * static_cast<std::size_t>(channels);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t pix = 0; pix < static_cast<std::ptrdiff_t>(d); ++pix) {
    const int col = static_cast<int>(pix % width);
    const int row = static_cast<int>(pix / width);
    for (int c = 0; c < channels; ++c) {
      double acc = 0.0;
      if (col > 0) acc += y[(pix - 1) * gs + c];
      if (col + 1 < width) acc -= y[pix * gs + c];
      if (row > 0) acc += y[(pix - width) * gs + channels + c];
      if (row + 1 < height) acc -= y[pix * gs + channels + c];
      out[c * d + pix] = acc;
    }
  }
}

#else  // !_OPENMP: parallel entry points fall through to the reference code.

double dot(std::span<const double> a, std::span<const double> b) { return serial::dot(a, b); }
double sum_abs(std::span<const double> a) { return serial::sum_abs(a); }
double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  return serial::sum_sq_diff(a, b);
}
double group_norm_sum(std::span<const double> a, std::size_t group_size) {
  return serial::group_norm_sum(a, group_size);
}
void copy(std::span<const double> x, std::span<double> out) { serial::copy(x, out); }
void fill(std::span<double> out, double value) { serial::fill(out, value); }
void scale(double alpha, std::span<const double> x, std::span<double> out) {
  serial::scale(alpha, x, out);
}
void axpy(double alpha, std::span<const double> x, std::span<const double> y,
          std::span<double> out) {
  serial::axpy(alpha, x, y, out);
}
void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y) {
  serial::axpy_inplace(alpha, x, y);
}
void sub(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  serial::sub(a, b, out);
}
void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out) {
  serial::lerp(a, b, t, out);
}
void clamp(std::span<const double> x, double lo, double hi, std::span<double> out) {
  serial::clamp(x, lo, hi, out);
}
void group_soft_threshold(std::span<const double> x, std::size_t group_size,
                          double threshold, std::span<double> out) {
  serial::group_soft_threshold(x, group_size, threshold, out);
}
void mask_scale(std::span<const double> x, std::span<const std::uint8_t> kept,
                std::size_t channels, std::span<double> out) {
  serial::mask_scale(x, kept, channels, out);
}
void grad_forward(std::span<const double> p, int height, int width, int channels,
                  std::span<double> out) {
  serial::grad_forward(p, height, width, channels, out);
}
void grad_adjoint(std::span<const double> y, int height, int width, int channels,
                  std::span<double> out) {
  serial::grad_adjoint(y, height, width, channels, out);
}

#endif  // _OPENMP

}  // namespace parallel

namespace {

inline bool go_parallel(std::size_t n) { return g_parallel && n >= kParallelCutoff; }

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  return go_parallel(a.size()) ? parallel::dot(a, b) : serial::dot(a, b);
}

double sum_abs(std::span<const double> a) {
  return go_parallel(a.size()) ? parallel::sum_abs(a) : serial::sum_abs(a);
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  return go_parallel(a.size()) ? parallel::sum_sq_diff(a, b) : serial::sum_sq_diff(a, b);
}

double group_norm_sum(std::span<const double> a, std::size_t group_size) {
  return go_parallel(a.size()) ? parallel::group_norm_sum(a, group_size)
                               : serial::group_norm_sum(a, group_size);
}

void copy(std::span<const double> x, std::span<double> out) {
  go_parallel(x.size()) ? parallel::copy(x, out) : serial::copy(x, out);
}

void fill(std::span<double> out, double value) {
  go_parallel(out.size()) ? parallel::fill(out, value) : serial::fill(out, value);
}

void scale(double alpha, std::span<const double> x, std::span<double> out) {
  go_parallel(x.size()) ? parallel::scale(alpha, x, out) : serial::scale(alpha, x, out);
}

void axpy(double alpha, std::span<const double> x, std::span<const double> y,
          std::span<double> out) {
  go_parallel(x.size()) ? parallel::axpy(alpha, x, y, out)
                        : serial::axpy(alpha, x, y, out);
}

void axpy_inplace(double alpha, std::span<const double> x, std::span<double> y) {
  go_parallel(x.size()) ? parallel::axpy_inplace(alpha, x, y)
                        : serial::axpy_inplace(alpha, x, y);
}

void sub(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  go_parallel(a.size()) ? parallel::sub(a, b, out) : serial::sub(a, b, out);
}

void lerp(std::span<const double> a, std::span<const double> b, double t,
          std::span<double> out) {
  go_parallel(a.size()) ? parallel::lerp(a, b, t, out) : serial::lerp(a, b, t, out);
}

void clamp(std::span<const double> x, double lo, double hi, std::span<double> out) {
  go_parallel(x.size()) ? parallel::clamp(x, lo, hi, out)
                        : serial::clamp(x, lo, hi, out);
}

void group_soft_threshold(std::span<const double> x, std::size_t group_size,
                          double threshold, std::span<double> out) {
  go_parallel(x.size()) ? parallel::group_soft_threshold(x, group_size, threshold, out)
                        : serial::group_soft_threshold(x, group_size, threshold, out);
}

void mask_scale(std::span<const double> x, std::span<const std::uint8_t> kept,
                std::size_t channels, std::span<double> out) {
  go_parallel(x.size()) ? parallel::mask_scale(x, kept, channels, out)
                        : serial::mask_scale(x, kept, channels, out);
}

void grad_forward(std::span<const double> p, int height, int width, int channels,
                  std::span<double> out) {
  go_parallel(p.size()) ? parallel::grad_forward(p, height, width, channels, out)
                        : serial::grad_forward(p, height, width, channels, out);
}

void grad_adjoint(std::span<const double> y, int height, int width, int channels,
                  std::span<double> out) {
  go_parallel(y.size()) ? parallel::grad_adjoint(y, height, width, channels, out)
                        : serial::grad_adjoint(y, height, width, channels, out);
}

}  // namespace pdba::kernels
