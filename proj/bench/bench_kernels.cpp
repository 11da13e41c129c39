#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "zetalab/kernels.hpp"

using namespace zl;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

template <bool Parallel>
void BM_mellin(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto H = random_vec(n, 1);
  std::vector<cplx> s(n / 4), out(n / 4);
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = 0.05 * static_cast<double>(j);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::mellin(H.data(), n, -5.0, 0.001, s.data(), s.size(), out.data());
    else
      kernels::serial::mellin(H.data(), n, -5.0, 0.001, s.data(), s.size(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_mconvolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_vec(n, 2), b = random_vec(n, 3);
  std::vector<cplx> out(2 * n - 1);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::mconvolve(a.data(), n, b.data(), n, 0.001, out.data());
    else
      kernels::serial::mconvolve(a.data(), n, b.data(), n, 0.001, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_trace_product(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto A = random_vec(n * n, 4), B = random_vec(n * n, 5);
  for (auto _ : state) {
    cplx t = Parallel ? kernels::parallel::trace_product(A.data(), B.data(), n)
                      : kernels::serial::trace_product(A.data(), B.data(), n);
    benchmark::DoNotOptimize(t);
  }
}

} // namespace

BENCHMARK(BM_mellin<false>)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mellin<true>)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_mconvolve<false>)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mconvolve<true>)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_trace_product<false>)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trace_product<true>)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
