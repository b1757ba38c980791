// Serial reference vs OpenMP kernels, plus one end-to-end modular.
//
//   bench_kernels --benchmark_filter=Sum

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "orlicz/fields.hpp"
#include "orlicz/kernels.hpp"
#include "orlicz/norm.hpp"

using namespace orlicz;

namespace {

std::vector<double> data(std::size_t n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

template <double (*Fn)(std::span<const double>)>
void reduce(benchmark::State& state) {
  const auto v = data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(v));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void modular_power(benchmark::State& state) {
  const auto domain = build_grid({{0.0, 1.0}}, {static_cast<std::size_t>(state.range(0))}, masks::everywhere());
  const auto field = sample(fields::linear(), domain);
  const auto phi = phi::power(64.0);
  for (auto _ : state) benchmark::DoNotOptimize(log_modular(phi, field, domain));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void luxemburg_power(benchmark::State& state) {
  const auto domain = build_grid({{0.0, 1.0}}, {static_cast<std::size_t>(state.range(0))}, masks::everywhere());
  const auto field = sample(fields::linear(), domain);
  const auto phi = phi::power(64.0);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(phi, field, domain).value);
}

}  // namespace

BENCHMARK(reduce<kernels::serial::sum>)->Name("Sum/serial")->Range(1 << 12, 1 << 22);
BENCHMARK(reduce<kernels::parallel::sum>)->Name("Sum/parallel")->Range(1 << 12, 1 << 22);
BENCHMARK(reduce<kernels::serial::max>)->Name("Max/serial")->Range(1 << 12, 1 << 22);
BENCHMARK(reduce<kernels::parallel::max>)->Name("Max/parallel")->Range(1 << 12, 1 << 22);
BENCHMARK(reduce<kernels::serial::log_sum_exp>)->Name("LogSumExp/serial")->Range(1 << 12, 1 << 22);
BENCHMARK(reduce<kernels::parallel::log_sum_exp>)->Name("LogSumExp/parallel")->Range(1 << 12, 1 << 22);
BENCHMARK(modular_power)->Range(1 << 12, 1 << 20);
BENCHMARK(luxemburg_power)->Range(1 << 12, 1 << 18);

BENCHMARK_MAIN();
