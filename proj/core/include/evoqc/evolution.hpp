#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evoqc/fitness.hpp"
#include "evoqc/genome.hpp"
#include "evoqc/rng.hpp"

namespace evoqc {

enum class Direction { minimize, maximize };

struct EvolutionConfig {
  int population_size = 20;
  int elite_count = 4;
  double mutation_p = 0.1;
  MutationMode mutation_mode = MutationMode::gate_replace;
  int n_generations = 500;
  int n_qubits = 0;
  int n_gates = 0;
  Direction direction = Direction::maximize;
  std::uint64_t seed = 1;
  // Replace non-elites with fresh random chromosomes instead of mutations.
  bool reset_nonelites = false;
  GatePool pool = default_gate_pool();
};

void validate_config(const EvolutionConfig& config);

// A population with one fitness slot per chromosome. fitness is empty until
// evaluate() fills it.
struct Generation {
  std::vector<Chromosome> chromosomes;
  std::vector<double> fitness;
};

struct GenerationStats {
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<GenerationStats> per_generation;
  Chromosome best_chromosome;
  double best_fitness = 0.0;
};

// Evaluates every chromosome. A fitness_fn failure (exception or non-finite
// value) is rethrown with the offending chromosome index attached.
Generation evaluate(const Generation& generation, const ChromosomeFitness& fitness_fn);

// One elitist generational step: the elite_count best chromosomes (ties
// broken toward lower index) are copied verbatim to the front of the next
// generation, keeping their fitness; every other slot is a mutation of an
// elite chosen round-robin (or a fresh random chromosome under
// reset_nonelites). Best fitness therefore never worsens.
Generation evolve_step(const Generation& generation, const EvolutionConfig& config,
                       const ChromosomeFitness& fitness_fn, Rng& rng);

using ProgressFn = std::function<void(const GenerationStats&)>;

// Full run: random initial population, n_generations steps. per_generation
// gets n_generations + 1 entries (the initial population is entry 0).
// Everything is a pure function of (config, fitness_fn); identical inputs
// give identical records.
RunRecord run(const EvolutionConfig& config, const ChromosomeFitness& fitness_fn,
              const ProgressFn& progress = {});

const char* direction_name(Direction direction);
const char* mutation_mode_name(MutationMode mode);

// JSON object {seed, config, generations: [{g, best, mean}], best_chromosome,
// best_fitness}; best_chromosome is the CSV gene string.
std::string run_record_to_json(const RunRecord& record, const EvolutionConfig& config);

}  // namespace evoqc
