#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pdba/kernels.hpp"

// Serial reference vs. OpenMP kernels at solver-relevant sizes (a 64x64 RGB
// primal block is ~12k doubles, the paper-scale image ~184k).

namespace {

namespace pk = pdba::kernels;

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = gauss(rng);
  return v;
}

void BM_dot_serial(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pk::serial::dot(a, b));
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_dot_parallel(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pk::parallel::dot(a, b));
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_axpy_serial(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto x = random_vec(n, 3), y = random_vec(n, 4);
  std::vector<double> out(n);
  for (auto _ : state) {
    pk::serial::axpy(1.25, x, y, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_axpy_parallel(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto x = random_vec(n, 3), y = random_vec(n, 4);
  std::vector<double> out(n);
  for (auto _ : state) {
    pk::parallel::axpy(1.25, x, y, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_group_soft_threshold_serial(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto x = random_vec(n, 5);
  std::vector<double> out(n);
  for (auto _ : state) {
    pk::serial::group_soft_threshold(x, 6, 0.1, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_group_soft_threshold_parallel(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto x = random_vec(n, 5);
  std::vector<double> out(n);
  for (auto _ : state) {
    pk::parallel::group_soft_threshold(x, 6, 0.1, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_grad_forward_serial(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const std::size_t n = static_cast<std::size_t>(side) * side * 3;
  const auto p = random_vec(n, 6);
  std::vector<double> out(2 * n);
  for (auto _ : state) {
    pk::serial::grad_forward(p, side, side, 3, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_grad_forward_parallel(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const std::size_t n = static_cast<std::size_t>(side) * side * 3;
  const auto p = random_vec(n, 6);
  std::vector<double> out(2 * n);
  for (auto _ : state) {
    pk::parallel::grad_forward(p, side, side, 3, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_grad_adjoint_serial(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const std::size_t n = static_cast<std::size_t>(side) * side * 3;
  const auto y = random_vec(2 * n, 7);
  std::vector<double> out(n);
  for (auto _ : state) {
    pk::serial::grad_adjoint(y, side, side, 3, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_grad_adjoint_parallel(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const std::size_t n = static_cast<std::size_t>(side) * side * 3;
  const auto y = random_vec(2 * n, 7);
  std::vector<double> out(n);
  for (auto _ : state) {
    pk::parallel::grad_adjoint(y, side, side, 3, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * n);
}

BENCHMARK(BM_dot_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_dot_parallel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_axpy_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_axpy_parallel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_group_soft_threshold_serial)->Arg(6 * (1 << 11))->Arg(6 * (1 << 15));
BENCHMARK(BM_group_soft_threshold_parallel)->Arg(6 * (1 << 11))->Arg(6 * (1 << 15));
BENCHMARK(BM_grad_forward_serial)->Arg(64)->Arg(256);
BENCHMARK(BM_grad_forward_parallel)->Arg(64)->Arg(256);
BENCHMARK(BM_grad_adjoint_serial)->Arg(64)->Arg(256);
BENCHMARK(BM_grad_adjoint_parallel)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
