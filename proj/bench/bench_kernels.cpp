// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fmns/kernels.hpp"

namespace {

std::vector<double> wave(std::size_t n, double phase) {
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = 1.5 + std::sin(0.001 * static_cast<double>(i) + phase);
  return f;
}

template <bool Parallel>
void BM_NodeDivFlux(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto coef = wave(n, 0.3);
  const auto field = wave(n + 1, 1.1);
  std::vector<double> out(n - 1);
  for (auto _ : state) {
    if constexpr (Parallel) {
      fmns::kernels::node_div_flux(coef, field, 1e-3, out);
    } else {
      fmns::kernels::serial::node_div_flux(coef, field, 1e-3, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_CellDivFlux(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto face = wave(n + 1, 0.7);
  const auto field = wave(n, 2.1);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      fmns::kernels::cell_div_flux(face, field, 1e-3, true, false, out);
    } else {
      fmns::kernels::serial::cell_div_flux(face, field, 1e-3, true, false, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

}  // namespace

BENCHMARK(BM_NodeDivFlux<false>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_NodeDivFlux<true>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CellDivFlux<false>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CellDivFlux<true>)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
