#include <benchmark/benchmark.h>

#include <numbers>

#include "couette/initial_data.hpp"
#include "couette/multipliers.hpp"
#include "couette/nonlinear2d.hpp"
#include "couette/toy_models.hpp"
#include "couette/transform.hpp"

using namespace couette;
using spectral::GridSpec;

static void BM_TransformRoundTrip(benchmark::State& state) {
  const auto g = GridSpec::make2d(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto f = spectral::random_field(g, {});
  for (auto _ : state) benchmark::DoNotOptimize(spectral::forward_transform(spectral::inverse_transform(f)));
}
BENCHMARK(BM_TransformRoundTrip)->Args({16, 512})->Args({64, 512});

static void BM_Nl2dStep(benchmark::State& state) {
  nonlinear2d::SolverConfig2D cfg;
  cfg.grid = GridSpec::make2d(16, static_cast<int>(state.range(0)), 2 * std::numbers::pi);
  auto w = spectral::random_field(cfg.grid, {});
  w *= 1e-2;
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear2d::step(w, 0.0, cfg));
}
BENCHMARK(BM_Nl2dStep)->Arg(256)->Arg(512);

static void BM_GhostM(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(multipliers::ghost_M(t, 2, 30.0, 1e-4));
    t += 1e-3;
  }
}
BENCHMARK(BM_GhostM);

static void BM_EchoChain(benchmark::State& state) {
  const double eta = static_cast<double>(state.range(0));
  toy_models::EchoChainState s;
  s.eta = eta;
  s.kappa = 0.2;
  s.kmax = 11;
  s.amps.assign(s.kmax, {});
  s.amps.back() = 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(toy_models::echo_chain_integrate(s, toy_models::LowSpectrum::uniform(0.2), 2 * eta, 21));
}
BENCHMARK(BM_EchoChain)->Arg(100);
BENCHMARK_MAIN();
