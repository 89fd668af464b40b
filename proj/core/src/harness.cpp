#include "evoqc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "evoqc/entanglement.hpp"
#include "evoqc/errors.hpp"
#include "evoqc/format.hpp"

namespace evoqc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

const char* fitness_kind_name(FitnessKind kind) {
  switch (kind) {
    case FitnessKind::kl: return "kl";
    case FitnessKind::mw: return "mw";
    case FitnessKind::vn: return "vn";
  }
  return "?";
}

TargetSpec parse_target(const std::string& text) {
  TargetSpec spec;
  if (text == "critical") {
    spec.kind = TargetSpec::Kind::critical;
    return spec;
  }
  if (text.rfind("rule:", 0) == 0) {
    int rule = 0;
    if (!parse_int(text.substr(5), rule) || rule < 0 || rule > 255) {
      throw std::domain_error("rule number must be an integer in [0, 255]: '" +
                              text + "'");
    }
    spec.kind = TargetSpec::Kind::rule;
    spec.rule = rule;
    return spec;
  }
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    if (path.empty()) throw std::domain_error("empty table file path");
    spec.kind = TargetSpec::Kind::file;
    spec.file = path;
    return spec;
  }
  throw std::domain_error(
      "target must be 'critical', 'rule:<n>' or 'file:<path>', got '" + text +
      "'");
}

std::string target_to_string(const TargetSpec& spec) {
  switch (spec.kind) {
    case TargetSpec::Kind::critical: return "critical";
    case TargetSpec::Kind::rule: return "rule:" + std::to_string(spec.rule);
    case TargetSpec::Kind::file: return "file:" + spec.file.string();
  }
  return "?";
}

TargetTable resolve_target(const TargetSpec& spec) {
  switch (spec.kind) {
    case TargetSpec::Kind::critical: return critical_ca_table();
    case TargetSpec::Kind::rule: return rule_to_table(spec.rule);
    case TargetSpec::Kind::file: return load_table_file(spec.file);
  }
  throw std::domain_error("unknown target kind");
}

void validate_experiment(ExperimentConfig& config) {
  if (config.fitness == FitnessKind::kl) {
    if (!config.target.has_value()) {
      throw std::domain_error("kl fitness requires a target table");
    }
    if (config.evo.n_qubits != 3) {
      throw std::domain_error("kl fitness works on a 3-qubit register");
    }
    config.evo.direction = Direction::minimize;
  } else {
    if (config.target.has_value()) {
      throw std::domain_error("a target table is only meaningful for kl fitness");
    }
    if (config.evo.n_qubits < 2) {
      throw std::domain_error(std::string(fitness_kind_name(config.fitness)) +
                              " fitness needs at least 2 qubits");
    }
    config.evo.direction = Direction::maximize;
  }
  if (config.runs < 1) throw std::domain_error("runs must be at least 1");
  if (config.shots < 0) throw std::domain_error("shots must be non-negative");
  if (config.shots > 0 && config.fitness != FitnessKind::kl) {
    throw std::domain_error("shot sampling only applies to kl fitness");
  }
  if (config.jobs < 1) throw std::domain_error("jobs must be at least 1");
  validate_config(config.evo);
}

ChromosomeFitness make_fitness(const ExperimentConfig& config,
                               std::uint64_t run_seed) {
  const GatePool pool = config.evo.pool;
  switch (config.fitness) {
    case FitnessKind::kl: {
      const TargetTable table = resolve_target(*config.target);
      const int shots = config.shots;
      if (shots == 0) {
        return [pool, table](const Chromosome& c) {
          return kl_fitness(decode(c, pool), table);
        };
      }
      // Seed each evaluation from (run, chromosome) so the sampled fitness
      // stays a pure, cacheable function of the chromosome.
      return [pool, table, shots, run_seed](const Chromosome& c) {
        Rng rng(splitmix64(run_seed ^ fnv1a64(chromosome_to_csv(c))));
        return kl_fitness(decode(c, pool), table, shots, rng);
      };
    }
    case FitnessKind::mw:
      return [pool](const Chromosome& c) { return mw_fitness(decode(c, pool)); };
    case FitnessKind::vn:
      return [pool](const Chromosome& c) { return vn_fitness(decode(c, pool)); };
  }
  throw std::domain_error("unknown fitness kind");
}

namespace {

std::string summary_csv(const ExperimentSummary& summary) {
  std::string out =
      "generation,mean_fitness_mean,mean_fitness_se,best_fitness_mean,"
      "best_fitness_se\n";
  for (const GenerationAggregate& row : summary.per_generation) {
    out += std::to_string(row.generation);
    out += ',';
    out += format_double(row.mean_fitness_mean);
    out += ',';
    out += format_double(row.mean_fitness_se);
    out += ',';
    out += format_double(row.best_fitness_mean);
    out += ',';
    out += format_double(row.best_fitness_se);
    out += '\n';
  }
  return out;
}

// Mean and standard error (sample stddev / sqrt(n)); SE is 0 for n = 1.
void mean_and_se(const std::vector<double>& xs, double& mean, double& se) {
  const std::size_t n = xs.size();
  double sum = 0.0;
  for (double x : xs) sum += x;
  mean = sum / static_cast<double>(n);
  if (n < 2) {
    se = 0.0;
    return;
  }
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  se = std::sqrt(sq / static_cast<double>(n - 1)) /
       std::sqrt(static_cast<double>(n));
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& raw_config) {
  ExperimentConfig config = raw_config;
  validate_experiment(config);
  if (config.out_dir.empty()) {
    throw std::domain_error("out_dir is required");
  }
  if (config.target.has_value()) {
    resolve_target(*config.target);  // fail on a bad table before any run
  }

  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " +
                             config.out_dir.string() + ": " + ec.message());
  }
  write_file(config.out_dir / "config.json", experiment_config_to_json(config));

  const int runs = config.runs;
  const int total_gens = config.evo.n_generations;
  std::vector<RunRecord> records(static_cast<std::size_t>(runs));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(runs));
  std::atomic<int> next_run{0};
  std::mutex io_mutex;

  const auto execute_run = [&](int i) {
    EvolutionConfig evo = config.evo;
    evo.seed = splitmix64(config.evo.seed ^ static_cast<std::uint64_t>(i));
    CachingFitness cache(make_fitness(config, evo.seed));
    const ChromosomeFitness fn = [&cache](const Chromosome& c) { return cache(c); };
    const ProgressFn progress = [&](const GenerationStats& stats) {
      std::lock_guard<std::mutex> lock(io_mutex);
      std::fprintf(stderr, "run %d: generation %d/%d best %s\n", i,
                   stats.generation, total_gens,
                   format_double(stats.best).c_str());
    };
    RunRecord record = run(evo, fn, progress);
    write_file(config.out_dir / ("run_" + std::to_string(i) + ".json"),
               run_record_to_json(record, evo));
    records[static_cast<std::size_t>(i)] = std::move(record);
  };

  const auto worker = [&]() {
    while (true) {
      const int i = next_run.fetch_add(1);
      if (i >= runs) return;
      try {
        execute_run(i);
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };

  const int jobs = std::min(config.jobs, runs);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentSummary summary;
  summary.per_generation.resize(static_cast<std::size_t>(total_gens) + 1);
  std::vector<double> means(static_cast<std::size_t>(runs));
  std::vector<double> bests(static_cast<std::size_t>(runs));
  for (int g = 0; g <= total_gens; ++g) {
    for (int i = 0; i < runs; ++i) {
      const GenerationStats& stats =
          records[static_cast<std::size_t>(i)].per_generation[static_cast<std::size_t>(g)];
      means[static_cast<std::size_t>(i)] = stats.mean;
      bests[static_cast<std::size_t>(i)] = stats.best;
    }
    GenerationAggregate& row = summary.per_generation[static_cast<std::size_t>(g)];
    row.generation = g;
    mean_and_se(means, row.mean_fitness_mean, row.mean_fitness_se);
    mean_and_se(bests, row.best_fitness_mean, row.best_fitness_se);
  }

  const Direction direction = config.evo.direction;
  int best_run = 0;
  for (int i = 1; i < runs; ++i) {
    const bool improves =
        direction == Direction::minimize
            ? records[static_cast<std::size_t>(i)].best_fitness <
                  records[static_cast<std::size_t>(best_run)].best_fitness
            : records[static_cast<std::size_t>(i)].best_fitness >
                  records[static_cast<std::size_t>(best_run)].best_fitness;
    if (improves) best_run = i;
  }
  summary.best_run = best_run;
  summary.best_seed = records[static_cast<std::size_t>(best_run)].seed;
  summary.best_fitness = records[static_cast<std::size_t>(best_run)].best_fitness;
  summary.best_chromosome = records[static_cast<std::size_t>(best_run)].best_chromosome;

  write_file(config.out_dir / "summary.csv", summary_csv(summary));
  write_file(config.out_dir / "best_circuit.txt",
             format_circuit(decode(summary.best_chromosome, config.evo.pool)));
  return summary;
}

std::optional<Metric> metric_from_name(const std::string& name) {
  if (name == "mw") return Metric::mw;
  if (name == "vn") return Metric::vn;
  if (name == "purity_per_qubit") return Metric::purity_per_qubit;
  if (name == "response") return Metric::response;
  return std::nullopt;
}

std::string measure_report(const std::filesystem::path& circuit_file, Metric metric) {
  const Circuit circuit = parse_circuit_file(circuit_file);
  switch (metric) {
    case Metric::mw:
      return format_double(mw_fitness(circuit)) + "\n";
    case Metric::vn:
      return format_double(vn_fitness(circuit)) + "\n";
    case Metric::purity_per_qubit: {
      const StateVector prepared =
          run_circuit(circuit, basis_state(circuit.n_qubits, 0));
      const auto reduced = reduced_per_qubit(prepared);
      ordered_json out = ordered_json::array();
      for (std::size_t q = 0; q < reduced.size(); ++q) {
        const DensityMatrix& rho = reduced[q];
        ordered_json entries = ordered_json::array();
        for (const cdouble& e : rho.entries()) {
          entries.push_back(ordered_json::array({e.real(), e.imag()}));
        }
        ordered_json item;
        item["qubit"] = q;
        item["rho"] = std::move(entries);
        item["purity"] = purity(rho);
        out.push_back(std::move(item));
      }
      return out.dump(2) + "\n";
    }
    case Metric::response: {
      const ResponseVector response = ca_response(circuit);
      TargetTable as_table;
      as_table.probs = response;
      return format_table(as_table);
    }
  }
  throw std::domain_error("unknown metric");
}

std::string dump_table(const TargetSpec& spec) {
  return format_table(resolve_target(spec));
}

namespace {

const char* const kConfigKeys[] = {"fitness",   "target",    "qubits",
                                   "gates",     "population", "elites",
                                   "generations", "runs",    "mutation",
                                   "mutation_mode", "reset_nonelites",
                                   "shots",     "seed",      "jobs",
                                   "out_dir"};

FitnessKind fitness_kind_from_name(const std::string& name) {
  if (name == "kl") return FitnessKind::kl;
  if (name == "mw") return FitnessKind::mw;
  if (name == "vn") return FitnessKind::vn;
  throw ParseError("unknown fitness kind '" + name + "'");
}

MutationMode mutation_mode_from_name(const std::string& name) {
  if (name == "gate_replace") return MutationMode::gate_replace;
  if (name == "full_replace") return MutationMode::full_replace;
  throw ParseError("unknown mutation mode '" + name + "'");
}

}  // namespace

ExperimentConfig experiment_config_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config JSON must be an object");
  for (const auto& item : j.items()) {
    const auto known = std::find(std::begin(kConfigKeys), std::end(kConfigKeys),
                                 item.key());
    if (known == std::end(kConfigKeys)) {
      throw ParseError("unknown config key '" + item.key() + "'");
    }
  }

  ExperimentConfig config;
  try {
    if (j.contains("fitness")) {
      config.fitness = fitness_kind_from_name(j.at("fitness").get<std::string>());
    }
    if (j.contains("target")) {
      config.target = parse_target(j.at("target").get<std::string>());
    }
    if (j.contains("qubits")) config.evo.n_qubits = j.at("qubits").get<int>();
    if (j.contains("gates")) config.evo.n_gates = j.at("gates").get<int>();
    if (j.contains("population")) {
      config.evo.population_size = j.at("population").get<int>();
    }
    if (j.contains("elites")) config.evo.elite_count = j.at("elites").get<int>();
    if (j.contains("generations")) {
      config.evo.n_generations = j.at("generations").get<int>();
    }
    if (j.contains("runs")) config.runs = j.at("runs").get<int>();
    if (j.contains("mutation")) config.evo.mutation_p = j.at("mutation").get<double>();
    if (j.contains("mutation_mode")) {
      config.evo.mutation_mode =
          mutation_mode_from_name(j.at("mutation_mode").get<std::string>());
    }
    if (j.contains("reset_nonelites")) {
      config.evo.reset_nonelites = j.at("reset_nonelites").get<bool>();
    }
    if (j.contains("shots")) config.shots = j.at("shots").get<int>();
    if (j.contains("seed")) config.evo.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) config.jobs = j.at("jobs").get<int>();
    if (j.contains("out_dir")) {
      config.out_dir = j.at("out_dir").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid config value: ") + e.what());
  }
  return config;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  ordered_json j;
  j["fitness"] = fitness_kind_name(config.fitness);
  if (config.target.has_value()) j["target"] = target_to_string(*config.target);
  j["qubits"] = config.evo.n_qubits;
  j["gates"] = config.evo.n_gates;
  j["population"] = config.evo.population_size;
  j["elites"] = config.evo.elite_count;
  j["generations"] = config.evo.n_generations;
  j["runs"] = config.runs;
  j["mutation"] = config.evo.mutation_p;
  j["mutation_mode"] = mutation_mode_name(config.evo.mutation_mode);
  j["reset_nonelites"] = config.evo.reset_nonelites;
  j["shots"] = config.shots;
  j["seed"] = config.evo.seed;
  return j.dump(2) + "\n";
}

}  // namespace evoqc
