#include <benchmark/benchmark.h>

#include <numbers>

#include "iongate/analysis.hpp"
#include "iongate/effective_models.hpp"
#include "iongate/operators.hpp"
#include "iongate/propagator.hpp"

namespace {

using namespace iongate;

void BM_GroundColumnsOneLoop(benchmark::State& state) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04);
  EvolveOptions options;
  options.fock_cutoff = static_cast<int>(state.range(0));
  options.scheme = static_cast<Scheme>(state.range(1));
  const double t = p.gate_time();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_ground_columns(p, PulseSchedule::constant(t), t, options));
  }
}
BENCHMARK(BM_GroundColumnsOneLoop)
    ->Args({20, static_cast<int>(Scheme::Midpoint)})
    ->Args({40, static_cast<int>(Scheme::Midpoint)})
    ->Args({40, static_cast<int>(Scheme::Fourth)})
    ->Unit(benchmark::kMillisecond);

void BM_HermitianExpm(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  const Operator x = collective_spin(2, SpinComponent::X);
  const FockOperators f = fock_ops(cutoff);
  const Matrix h = tensor(x, f.a + f.a_dagger).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_expm(h, Complex{0.0, -0.1}));
}
BENCHMARK(BM_HermitianExpm)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_MsPropagator(benchmark::State& state) {
  GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04, std::numbers::pi / 3);
  const double t = p.gate_time();
  for (auto _ : state) benchmark::DoNotOptimize(ms_propagator(p, t, 40));
}
BENCHMARK(BM_MsPropagator)->Unit(benchmark::kMillisecond);

void BM_ProcessDistance(benchmark::State& state) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04);
  const double t = p.gate_time();
  const QuantumProcess a = channel_from_unitary(ms_propagator(p, t, 40));
  const Matrix sy = collective_spin(2, SpinComponent::Y).matrix();
  const QuantumProcess b =
      channel_from_qubit_unitary(hermitian_expm(sy * sy, Complex{0.0, std::numbers::pi / 8}));
  for (auto _ : state) benchmark::DoNotOptimize(process_distance(a, b));
}
BENCHMARK(BM_ProcessDistance);

}  // namespace

BENCHMARK_MAIN();
