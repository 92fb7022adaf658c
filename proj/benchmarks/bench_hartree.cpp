#include <cmath>

#include <benchmark/benchmark.h>

#include "hartree/cartesian3d.hpp"
#include "hartree/functionals.hpp"
#include "hartree/solver.hpp"
#include "hartree/spectral.hpp"
#include "hartree/verify.hpp"

namespace {

using namespace hartree;

void BM_RadialAForm(benchmark::State& state) {
  const auto grid = build_grid(static_cast<std::size_t>(state.range(0)), 60.0);
  const auto rho = square(random_radial_profile(grid, 1));
  for (auto _ : state) benchmark::DoNotOptimize(a_form(rho, rho));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RadialAForm)->RangeMultiplier(2)->Range(512, 8192)->Complexity(benchmark::oN);

void BM_HartreePotential(benchmark::State& state) {
  const auto grid = build_grid(static_cast<std::size_t>(state.range(0)), 60.0);
  const auto chi = random_radial_profile(grid, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hartree_potential(chi));
}
BENCHMARK(BM_HartreePotential)->Arg(2048)->Arg(8192);

void BM_LatticeADirect(benchmark::State& state) {
  const CartesianGrid grid{static_cast<std::size_t>(state.range(0)), 10.0};
  const auto f = random_lattice_field(grid, 3);
  const auto g = random_lattice_field(grid, 4);
  const bool bilinear = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(bilinear ? a_direct(f, g) : a_direct(f, f));
}
BENCHMARK(BM_LatticeADirect)->Args({16, 0})->Args({16, 1})->Args({24, 0})->Unit(benchmark::kMillisecond);

void BM_PoissonHartree(benchmark::State& state) {
  const CartesianGrid grid{static_cast<std::size_t>(state.range(0)), 11.0};
  const auto f = random_lattice_field(grid, 5);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_hartree(f));
}
BENCHMARK(BM_PoissonHartree)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_HydrogenSpectrum(benchmark::State& state) {
  const auto grid = build_grid(4096, 120.0);
  for (auto _ : state) benchmark::DoNotOptimize(hydrogen_eigenpairs(grid, 2));
}
BENCHMARK(BM_HydrogenSpectrum)->Unit(benchmark::kMillisecond);

void BM_MinimizeAction(benchmark::State& state) {
  SolverConfig c;
  c.omega = 0.2;
  c.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(minimize_action(c));
}
BENCHMARK(BM_MinimizeAction)->Arg(1024)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_ScfFixedPoint(benchmark::State& state) {
  SolverConfig c;
  c.omega = 0.2;
  for (auto _ : state) benchmark::DoNotOptimize(scf_fixed_point(c));
}
BENCHMARK(BM_ScfFixedPoint)->Unit(benchmark::kMillisecond);

void BM_MatchedRescaling(benchmark::State& state) {
  const auto grid = default_grid();
  const RadialProfile p = random_profile(0);
  for (auto _ : state) benchmark::DoNotOptimize(matched_rescaling(grid, p, 0.2));
}
BENCHMARK(BM_MatchedRescaling)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
