#include <benchmark/benchmark.h>

#include "pseudospin/oracle.hpp"
#include "pseudospin/specfun.hpp"
#include "pseudospin/spectra.hpp"
#include "pseudospin/spinors.hpp"

namespace ps = pseudospin;

namespace {

const ps::PhysicalContext kCtx{1.0, 0.0};
const ps::PotentialSpec kMorse = ps::MorseSpec{5.0, 1.25, 0.8, std::nullopt};
const ps::PotentialSpec kHulthen = ps::HulthenSpec{-10.0, 1.0};

void JacobiRecurrence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::specfun::jacobi(n, 0.7, 2.3, x));
    x = x > 0.9 ? -0.9 : x + 1e-3;
  }
}
BENCHMARK(JacobiRecurrence)->Arg(2)->Arg(8)->Arg(32);

void SolveEnergy(benchmark::State& state, const ps::PotentialSpec& spec) {
  const auto bracket = ps::default_bracket(spec, kCtx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::solve_energy(spec, kCtx, 1, 2, bracket).energy);
  }
}
BENCHMARK_CAPTURE(SolveEnergy, morse, kMorse)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(SolveEnergy, hulthen, kHulthen)->Unit(benchmark::kMicrosecond);

void ShootEnergy(benchmark::State& state, const ps::PotentialSpec& spec) {
  const auto bracket = ps::default_bracket(spec, kCtx);
  const auto eq = ps::make_effective_equation(spec, kCtx, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::shoot_energy(eq, 1, bracket));
  }
}
BENCHMARK_CAPTURE(ShootEnergy, morse, kMorse)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ShootEnergy, hulthen, kHulthen)->Unit(benchmark::kMillisecond);

void LowerComponentOnGrid(benchmark::State& state) {
  const auto bound = ps::solve_energy(kMorse, kCtx, 1, 2, ps::default_bracket(kMorse, kCtx));
  const auto grid = ps::default_spinor_grid(kMorse, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps::lower_component(kMorse, kCtx, bound, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(LowerComponentOnGrid)->Arg(4001)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
