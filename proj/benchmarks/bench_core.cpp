#include "iontrap/angular.hpp"
#include "iontrap/chain.hpp"
#include "iontrap/dynamics.hpp"
#include "iontrap/normal_modes.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace iontrap;

static void BM_SolveEquilibrium(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_equilibrium(n));
}
BENCHMARK(BM_SolveEquilibrium)->Arg(2)->Arg(10)->Arg(30)->Arg(50);

static void BM_Diagonalize(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const CouplingMatrix a = build_coupling_matrix(solve_equilibrium(n));
  for (auto _ : state)
    benchmark::DoNotOptimize(diagonalize(a));
}
BENCHMARK(BM_Diagonalize)->Arg(3)->Arg(10)->Arg(30);

static void BM_Wigner3jExact(benchmark::State &state) {
  const auto h = HalfInteger::from_twice;
  for (auto _ : state)
    benchmark::DoNotOptimize(wigner_3j_exact(h(5), 2, h(1), h(3), -1, h(-1)));
}
BENCHMARK(BM_Wigner3jExact);

// Ten sideband periods at x = Omega_0 eta / (sqrt(N) nu) = 0.05.
static void BM_Integrate(benchmark::State &state) {
  SimulationConfig c;
  c.ion_count = static_cast<int>(state.range(0));
  c.eta = 0.1;
  c.rabi = 0.05 * std::sqrt(static_cast<double>(c.ion_count)) / c.eta;
  c.duration = 10.0 * c.sideband_period();
  const ModeSpectrum spectrum = normal_modes(c.ion_count);
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(c, spectrum));
}
BENCHMARK(BM_Integrate)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
