// Serial reference against the OpenMP kernels:
//   grid integration, Birman-Schwinger assembly, Hamiltonian apply.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "efimov/bs.hpp"
#include "efimov/direct.hpp"
#include "efimov/quadrature.hpp"

namespace {

using namespace efimov;

const LatticeOrder& order() {
  static const LatticeOrder m(3);
  return m;
}

double integrand(const TorusPoint& p) {
  return 1.0 / (3.0 - std::cos(3 * p[0]) - std::cos(3 * p[1]) - std::cos(3 * p[2]));
}

const ModelParams& params() {
  static const ModelParams p = make_params(order(), presets::half_plus_cos1(), 0.016);
  return p;
}

void BM_IntegrateSerial(benchmark::State& st) {
  const TorusGrid g = standard_grid(static_cast<int>(st.range(0)), order());
  for (auto _ : st) benchmark::DoNotOptimize(integrate_serial(g, integrand));
}

void BM_IntegrateParallel(benchmark::State& st) {
  const TorusGrid g = standard_grid(static_cast<int>(st.range(0)), order());
  for (auto _ : st) benchmark::DoNotOptimize(integrate(g, integrand));
}

void BM_AssembleSerial(benchmark::State& st) {
  const TorusGrid g = standard_grid(static_cast<int>(st.range(0)), order());
  for (auto _ : st) benchmark::DoNotOptimize(assemble_bs_serial(params(), g, -0.05).a.data());
}

void BM_AssembleParallel(benchmark::State& st) {
  const TorusGrid g = standard_grid(static_cast<int>(st.range(0)), order());
  for (auto _ : st) benchmark::DoNotOptimize(assemble_bs(params(), g, -0.05).a.data());
}

std::vector<double> random_pair_function(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  std::vector<double> f(n);
  for (auto& x : f) x = d(rng);
  return f;
}

void BM_ApplySerial(benchmark::State& st) {
  const DiscreteHamiltonian h(params(), standard_grid(static_cast<int>(st.range(0)), order()));
  const auto f = random_pair_function(h.dim());
  for (auto _ : st) benchmark::DoNotOptimize(h.apply_serial(f).data());
}

void BM_ApplyParallel(benchmark::State& st) {
  const DiscreteHamiltonian h(params(), standard_grid(static_cast<int>(st.range(0)), order()));
  const auto f = random_pair_function(h.dim());
  for (auto _ : st) benchmark::DoNotOptimize(h.apply(f).data());
}

}  // namespace

BENCHMARK(BM_IntegrateSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntegrateParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AssembleSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ApplySerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyParallel)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
