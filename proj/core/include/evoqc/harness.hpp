#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evoqc/evolution.hpp"
#include "evoqc/fitness.hpp"

namespace evoqc {

enum class FitnessKind { kl, mw, vn };

const char* fitness_kind_name(FitnessKind kind);

// Where a KL target table comes from: the built-in critical table, a Wolfram
// rule number, or a table file.
struct TargetSpec {
  enum class Kind { critical, rule, file };

  Kind kind = Kind::critical;
  int rule = 0;
  std::filesystem::path file;
};

// Accepts "critical", "rule:<0..255>" or "file:<path>".
TargetSpec parse_target(const std::string& text);
std::string target_to_string(const TargetSpec& spec);
TargetTable resolve_target(const TargetSpec& spec);

struct ExperimentConfig {
  EvolutionConfig evo;
  FitnessKind fitness = FitnessKind::mw;
  std::optional<TargetSpec> target;  // present exactly when fitness == kl
  int runs = 50;
  int shots = 0;  // 0 = exact probabilities
  int jobs = 1;
  std::filesystem::path out_dir;
};

// Checks cross-field constraints (target presence, 3-qubit KL register,
// non-negative shots, ...) and fills evo.direction from the fitness kind.
void validate_experiment(ExperimentConfig& config);

struct GenerationAggregate {
  int generation = 0;
  double mean_fitness_mean = 0.0;
  double mean_fitness_se = 0.0;
  double best_fitness_mean = 0.0;
  double best_fitness_se = 0.0;
};

struct ExperimentSummary {
  std::vector<GenerationAggregate> per_generation;
  int best_run = 0;
  std::uint64_t best_seed = 0;
  double best_fitness = 0.0;
  Chromosome best_chromosome;
};

// Runs config.runs independent runs (run i is seeded splitmix64(seed ^ i),
// executed on up to config.jobs threads; results do not depend on
// scheduling) and writes into out_dir:
//   config.json    the experiment configuration
//   run_<i>.json   one RunRecord per run
//   summary.csv    per-generation aggregates: generation, mean_fitness_mean,
//                  mean_fitness_se, best_fitness_mean, best_fitness_se
//                  (SE = sample standard deviation / sqrt(runs))
//   best_circuit.txt  the best circuit over all runs, circuit text format
// Progress goes to stderr, one line per 10% of a run's generations. Identical
// (config, seed) produce byte-identical files.
ExperimentSummary run_experiment(const ExperimentConfig& config);

enum class Metric { mw, vn, purity_per_qubit, response };

std::optional<Metric> metric_from_name(const std::string& name);

// Loads a circuit text file and reports the metric as a printable string:
// a bare number for mw/vn, a JSON array of per-qubit reduced matrices (rho as
// [re, im] pairs, row major) for purity_per_qubit, and the 8-line table
// format for response.
std::string measure_report(const std::filesystem::path& circuit_file, Metric metric);

// The resolved target table in the 8-line table file format.
std::string dump_table(const TargetSpec& spec);

// JSON round-trip for experiment configs; unknown keys are rejected. The
// emitted form is what run_experiment writes as config.json (out_dir and jobs
// are execution details and are not serialized).
ExperimentConfig experiment_config_from_json(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);

// The chromosome fitness used by runs of this experiment. Shot-mode KL draws
// its sample seed from (run_seed, chromosome) so the function stays pure and
// cacheable.
ChromosomeFitness make_fitness(const ExperimentConfig& config, std::uint64_t run_seed);

}  // namespace evoqc
