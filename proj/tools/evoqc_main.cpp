#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "evoqc/format.hpp"
#include "evoqc/harness.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolutionary synthesis of small quantum circuits"};
  app.require_subcommand(1);

  // evolve
  auto* evolve = app.add_subcommand(
      "evolve", "run a multi-run evolution experiment and write its results");
  std::string config_path;
  int qubits = 0;
  int gates = 0;
  int population = 20;
  int elites = 4;
  int generations = 500;
  int runs = 50;
  double mutation = 0.1;
  std::string mutation_mode = "gate_replace";
  std::string fitness = "mw";
  std::string target;
  int shots = 0;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out_dir;

  auto* opt_config = evolve->add_option(
      "--config", config_path, "JSON config file; explicit flags override it");
  auto* opt_qubits = evolve->add_option("--qubits", qubits, "register width");
  auto* opt_gates = evolve->add_option("--gates", gates, "gates per chromosome");
  auto* opt_population =
      evolve->add_option("--population", population, "population size")
          ->capture_default_str();
  auto* opt_elites =
      evolve->add_option("--elites", elites, "elites preserved per generation")
          ->capture_default_str();
  auto* opt_generations =
      evolve->add_option("--generations", generations, "generations per run")
          ->capture_default_str();
  auto* opt_runs =
      evolve->add_option("--runs", runs, "independent runs")->capture_default_str();
  auto* opt_mutation =
      evolve->add_option("--mutation", mutation, "per-gene mutation probability")
          ->capture_default_str();
  auto* opt_mutation_mode =
      evolve
          ->add_option("--mutation-mode", mutation_mode,
                       "gate_replace or full_replace")
          ->capture_default_str();
  auto* opt_fitness =
      evolve->add_option("--fitness", fitness, "kl, mw or vn")->capture_default_str();
  auto* opt_target = evolve->add_option(
      "--target", target, "kl target: critical, rule:<n> or file:<path>");
  auto* opt_shots =
      evolve
          ->add_option("--shots", shots,
                       "measurement samples per response entry; 0 = exact")
          ->capture_default_str();
  auto* opt_seed =
      evolve->add_option("--seed", seed, "master seed")->capture_default_str();
  auto* opt_jobs =
      evolve->add_option("--jobs", jobs, "concurrent runs")->capture_default_str();
  auto* opt_out_dir = evolve->add_option("--out-dir", out_dir, "output directory");

  evolve->callback([&]() {
    evoqc::ExperimentConfig config;
    if (opt_config->count()) {
      config = evoqc::experiment_config_from_json(read_file(config_path));
    }
    if (opt_qubits->count()) config.evo.n_qubits = qubits;
    if (opt_gates->count()) config.evo.n_gates = gates;
    if (opt_population->count()) config.evo.population_size = population;
    if (opt_elites->count()) config.evo.elite_count = elites;
    if (opt_generations->count()) config.evo.n_generations = generations;
    if (opt_runs->count()) config.runs = runs;
    if (opt_mutation->count()) config.evo.mutation_p = mutation;
    if (opt_mutation_mode->count()) {
      if (mutation_mode == "gate_replace") {
        config.evo.mutation_mode = evoqc::MutationMode::gate_replace;
      } else if (mutation_mode == "full_replace") {
        config.evo.mutation_mode = evoqc::MutationMode::full_replace;
      } else {
        throw CLI::ValidationError("--mutation-mode",
                                   "expected gate_replace or full_replace");
      }
    }
    if (opt_fitness->count()) {
      if (fitness == "kl") {
        config.fitness = evoqc::FitnessKind::kl;
      } else if (fitness == "mw") {
        config.fitness = evoqc::FitnessKind::mw;
      } else if (fitness == "vn") {
        config.fitness = evoqc::FitnessKind::vn;
      } else {
        throw CLI::ValidationError("--fitness", "expected kl, mw or vn");
      }
    }
    if (opt_target->count()) config.target = evoqc::parse_target(target);
    if (opt_shots->count()) config.shots = shots;
    if (opt_seed->count()) config.evo.seed = seed;
    if (opt_jobs->count()) config.jobs = jobs;
    if (opt_out_dir->count()) config.out_dir = out_dir;

    const evoqc::ExperimentSummary summary = evoqc::run_experiment(config);
    std::fprintf(stderr, "best fitness %s (run %d, seed %llu); results in %s\n",
                 evoqc::format_double(summary.best_fitness).c_str(),
                 summary.best_run,
                 static_cast<unsigned long long>(summary.best_seed),
                 config.out_dir.string().c_str());
  });

  // measure
  auto* measure = app.add_subcommand(
      "measure", "evaluate a metric on a circuit text file");
  std::string circuit_file;
  std::string metric_name;
  measure->add_option("circuit", circuit_file, "circuit text file")->required();
  measure
      ->add_option("--metric", metric_name,
                   "mw, vn, purity_per_qubit or response")
      ->required();
  measure->callback([&]() {
    const auto metric = evoqc::metric_from_name(metric_name);
    if (!metric) {
      throw CLI::ValidationError(
          "--metric", "expected mw, vn, purity_per_qubit or response");
    }
    std::fputs(evoqc::measure_report(circuit_file, *metric).c_str(), stdout);
  });

  // dump-table
  auto* dump = app.add_subcommand(
      "dump-table", "print a target table in the 8-line table file format");
  std::string target_spec;
  dump->add_option("target", target_spec, "critical, rule:<n> or file:<path>")
      ->required();
  dump->callback([&]() {
    std::fputs(evoqc::dump_table(evoqc::parse_target(target_spec)).c_str(),
               stdout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
