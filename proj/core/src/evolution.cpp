#include "evoqc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "evoqc/format.hpp"

namespace evoqc {

void validate_config(const EvolutionConfig& config) {
  if (config.population_size < 1) {
    throw std::domain_error("population_size must be at least 1");
  }
  if (config.elite_count < 1 || config.elite_count > config.population_size) {
    throw std::domain_error("elite_count must be in [1, population_size]");
  }
  if (config.mutation_p < 0.0 || config.mutation_p > 1.0) {
    throw std::domain_error("mutation_p must be in [0, 1]");
  }
  if (config.n_generations < 1) {
    throw std::domain_error("n_generations must be at least 1");
  }
  if (config.n_qubits < 1 || config.n_qubits > kMaxQubits) {
    throw std::domain_error("n_qubits must be in [1, " +
                            std::to_string(kMaxQubits) + "]");
  }
  if (config.n_gates < 1) {
    throw std::domain_error("n_gates must be at least 1");
  }
  if (config.pool.kinds.empty()) {
    throw std::domain_error("gate pool is empty");
  }
}

namespace {

bool better(double a, double b, Direction direction) {
  return direction == Direction::minimize ? a < b : a > b;
}

double evaluate_one(const ChromosomeFitness& fitness_fn,
                    const Chromosome& chromosome, std::size_t index) {
  double value = 0.0;
  try {
    value = fitness_fn(chromosome);
  } catch (const std::exception& e) {
    throw std::runtime_error("fitness evaluation failed for chromosome " +
                             std::to_string(index) + ": " + e.what());
  }
  if (!std::isfinite(value)) {
    throw std::runtime_error("fitness of chromosome " + std::to_string(index) +
                             " is not finite");
  }
  return value;
}

// Population indices, best first; stable, so ties go to the lower index.
std::vector<std::size_t> ranked_indices(const Generation& generation,
                                        Direction direction) {
  std::vector<std::size_t> order(generation.chromosomes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return better(generation.fitness[a], generation.fitness[b], direction);
  });
  return order;
}

GenerationStats stats_of(const Generation& generation, int g, Direction direction) {
  GenerationStats stats;
  stats.generation = g;
  stats.best = generation.fitness.front();
  double sum = 0.0;
  for (double f : generation.fitness) {
    if (better(f, stats.best, direction)) stats.best = f;
    sum += f;
  }
  stats.mean = sum / static_cast<double>(generation.fitness.size());
  return stats;
}

}  // namespace

Generation evaluate(const Generation& generation, const ChromosomeFitness& fitness_fn) {
  Generation out;
  out.chromosomes = generation.chromosomes;
  out.fitness.resize(out.chromosomes.size());
  for (std::size_t i = 0; i < out.chromosomes.size(); ++i) {
    out.fitness[i] = evaluate_one(fitness_fn, out.chromosomes[i], i);
  }
  return out;
}

Generation evolve_step(const Generation& generation, const EvolutionConfig& config,
                       const ChromosomeFitness& fitness_fn, Rng& rng) {
  validate_config(config);
  const std::size_t pop = static_cast<std::size_t>(config.population_size);
  if (generation.chromosomes.size() != pop ||
      generation.fitness.size() != pop) {
    throw std::domain_error("generation does not match population_size");
  }

  const auto order = ranked_indices(generation, config.direction);
  const std::size_t n_elites = static_cast<std::size_t>(config.elite_count);

  Generation next;
  next.chromosomes.reserve(pop);
  next.fitness.reserve(pop);
  // Elites carry their fitness over unchanged; the fitness function is pure,
  // so re-evaluating could only reproduce the same value.
  for (std::size_t e = 0; e < n_elites; ++e) {
    next.chromosomes.push_back(generation.chromosomes[order[e]]);
    next.fitness.push_back(generation.fitness[order[e]]);
  }
  for (std::size_t slot = n_elites; slot < pop; ++slot) {
    const Chromosome& parent = next.chromosomes[(slot - n_elites) % n_elites];
    Chromosome child =
        config.reset_nonelites
            ? random_chromosome(config.n_qubits, config.n_gates, rng, config.pool)
            : mutate(parent, config.mutation_p, config.mutation_mode, rng,
                     config.pool);
    next.fitness.push_back(evaluate_one(fitness_fn, child, slot));
    next.chromosomes.push_back(std::move(child));
  }
  return next;
}

RunRecord run(const EvolutionConfig& config, const ChromosomeFitness& fitness_fn,
              const ProgressFn& progress) {
  validate_config(config);
  Rng rng(config.seed);

  Generation generation;
  generation.chromosomes.reserve(static_cast<std::size_t>(config.population_size));
  for (int i = 0; i < config.population_size; ++i) {
    generation.chromosomes.push_back(
        random_chromosome(config.n_qubits, config.n_gates, rng, config.pool));
  }
  generation = evaluate(generation, fitness_fn);

  RunRecord record;
  record.seed = config.seed;
  record.per_generation.reserve(static_cast<std::size_t>(config.n_generations) + 1);
  record.per_generation.push_back(stats_of(generation, 0, config.direction));

  const int step = std::max(1, config.n_generations / 10);
  for (int g = 1; g <= config.n_generations; ++g) {
    generation = evolve_step(generation, config, fitness_fn, rng);
    record.per_generation.push_back(stats_of(generation, g, config.direction));
    if (progress && (g % step == 0 || g == config.n_generations)) {
      progress(record.per_generation.back());
    }
  }

  std::size_t best_index = 0;
  for (std::size_t i = 1; i < generation.fitness.size(); ++i) {
    if (better(generation.fitness[i], generation.fitness[best_index],
               config.direction)) {
      best_index = i;
    }
  }
  record.best_chromosome = generation.chromosomes[best_index];
  record.best_fitness = generation.fitness[best_index];
  return record;
}

const char* direction_name(Direction direction) {
  return direction == Direction::minimize ? "minimize" : "maximize";
}

const char* mutation_mode_name(MutationMode mode) {
  return mode == MutationMode::gate_replace ? "gate_replace" : "full_replace";
}

std::string run_record_to_json(const RunRecord& record, const EvolutionConfig& config) {
  nlohmann::ordered_json j;
  j["seed"] = record.seed;
  nlohmann::ordered_json cfg;
  cfg["population"] = config.population_size;
  cfg["elites"] = config.elite_count;
  cfg["mutation"] = config.mutation_p;
  cfg["mutation_mode"] = mutation_mode_name(config.mutation_mode);
  cfg["generations"] = config.n_generations;
  cfg["qubits"] = config.n_qubits;
  cfg["gates"] = config.n_gates;
  cfg["direction"] = direction_name(config.direction);
  j["config"] = std::move(cfg);
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (const GenerationStats& stats : record.per_generation) {
    nlohmann::ordered_json g;
    g["g"] = stats.generation;
    g["best"] = stats.best;
    g["mean"] = stats.mean;
    gens.push_back(std::move(g));
  }
  j["generations"] = std::move(gens);
  j["best_chromosome"] = chromosome_to_csv(record.best_chromosome);
  j["best_fitness"] = record.best_fitness;
  return j.dump(2) + "\n";
}

}  // namespace evoqc
