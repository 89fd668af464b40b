#include <benchmark/benchmark.h>

#include "evoqc/density.hpp"
#include "evoqc/entanglement.hpp"
#include "evoqc/evolution.hpp"
#include "evoqc/fitness.hpp"
#include "evoqc/rng.hpp"

using namespace evoqc;

namespace {

Circuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed) {
  Rng rng(seed);
  return decode(random_chromosome(n_qubits, n_gates, rng));
}

StateVector random_state(int n_qubits, std::uint64_t seed) {
  return run_circuit(random_circuit(n_qubits, 4 * n_qubits, seed),
                     basis_state(n_qubits, 0));
}

void BM_run_circuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Circuit circuit = random_circuit(n, 32, 1);
  const StateVector input = basis_state(n, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_circuit(circuit, input));
  }
}
BENCHMARK(BM_run_circuit)->DenseRange(2, 8);

void BM_meyer_wallach_projections(benchmark::State& state) {
  const StateVector prepared = random_state(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(meyer_wallach_projections(prepared));
  }
}
BENCHMARK(BM_meyer_wallach_projections)->DenseRange(2, 8);

void BM_meyer_wallach_purity(benchmark::State& state) {
  const StateVector prepared = random_state(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(meyer_wallach_purity(prepared));
  }
}
BENCHMARK(BM_meyer_wallach_purity)->DenseRange(2, 8);

void BM_partial_trace_single_qubit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DensityMatrix rho = density_from_state(random_state(n, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(rho, n, {0}));
  }
}
BENCHMARK(BM_partial_trace_single_qubit)->DenseRange(2, 6);

void BM_entropy_fitness(benchmark::State& state) {
  const StateVector prepared = random_state(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_fitness(prepared));
  }
}
BENCHMARK(BM_entropy_fitness)->DenseRange(2, 6);

void BM_kl_fitness(benchmark::State& state) {
  const Circuit circuit = random_circuit(3, static_cast<int>(state.range(0)), 5);
  const TargetTable target = critical_ca_table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kl_fitness(circuit, target));
  }
}
BENCHMARK(BM_kl_fitness)->Arg(5)->Arg(15)->Arg(30);

void BM_evolve_step(benchmark::State& state) {
  EvolutionConfig config;
  config.n_qubits = 3;
  config.n_gates = 15;
  config.direction = Direction::minimize;
  const TargetTable target = rule_to_table(90);
  const ChromosomeFitness fitness = [&target](const Chromosome& c) {
    return kl_fitness(decode(c), target);
  };
  Rng rng(6);
  Generation generation;
  for (int i = 0; i < config.population_size; ++i) {
    generation.chromosomes.push_back(
        random_chromosome(config.n_qubits, config.n_gates, rng));
  }
  generation = evaluate(generation, fitness);
  for (auto _ : state) {
    generation = evolve_step(generation, config, fitness, rng);
  }
}
BENCHMARK(BM_evolve_step);

}  // namespace

BENCHMARK_MAIN();
