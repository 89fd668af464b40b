#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evoqc/errors.hpp"
#include "evoqc/format.hpp"
#include "evoqc/harness.hpp"
#include "test_support.hpp"

using namespace evoqc;
namespace fs = std::filesystem;

namespace {

ExperimentConfig mw_experiment(const fs::path& out_dir) {
  ExperimentConfig config;
  config.fitness = FitnessKind::mw;
  config.evo.n_qubits = 3;
  config.evo.n_gates = 4;
  config.evo.population_size = 10;
  config.evo.elite_count = 2;
  config.evo.n_generations = 5;
  config.evo.seed = 99;
  config.runs = 2;
  config.out_dir = out_dir;
  return config;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

TEST_CASE("target specs parse and print") {
  TargetSpec spec = parse_target("critical");
  CHECK(spec.kind == TargetSpec::Kind::critical);
  CHECK(target_to_string(spec) == "critical");
  CHECK(resolve_target(spec) == critical_ca_table());

  spec = parse_target("rule:90");
  CHECK(spec.kind == TargetSpec::Kind::rule);
  CHECK(spec.rule == 90);
  CHECK(target_to_string(spec) == "rule:90");
  CHECK(resolve_target(spec) == rule_to_table(90));

  spec = parse_target("file:tables/t.txt");
  CHECK(spec.kind == TargetSpec::Kind::file);
  CHECK(spec.file == fs::path("tables/t.txt"));
  CHECK(target_to_string(spec) == "file:tables/t.txt");

  CHECK_THROWS_AS(parse_target("rule:256"), std::domain_error);
  CHECK_THROWS_AS(parse_target("rule:-1"), std::domain_error);
  CHECK_THROWS_AS(parse_target("rule:abc"), std::domain_error);
  CHECK_THROWS_AS(parse_target("bogus"), std::domain_error);
  CHECK_THROWS_AS(parse_target("file:"), std::domain_error);
  CHECK_THROWS_AS(parse_target(""), std::domain_error);
}

TEST_CASE("dump_table emits the 8-line format") {
  const std::string critical = dump_table(parse_target("critical"));
  CHECK(critical.substr(0, 9) == "0.394221\n");
  CHECK(split_lines(critical).size() == 8);

  const test::TempDir dir;
  const auto path = dir.write("critical.txt", critical);
  CHECK(load_table_file(path) == critical_ca_table());

  CHECK(dump_table(parse_target("rule:90")) == "0\n1\n0\n1\n1\n0\n1\n0\n");
}

TEST_CASE("measure_report on a Bell circuit") {
  const test::TempDir dir;
  const auto path = dir.write("bell.txt", "qubits 2\nH 0\nCNOT 0 1\n");

  double mw = 0.0;
  REQUIRE(parse_double(split_lines(measure_report(path, Metric::mw))[0], mw));
  CHECK(mw == doctest::Approx(1.0).epsilon(1e-9));

  double vn = 0.0;
  REQUIRE(parse_double(split_lines(measure_report(path, Metric::vn))[0], vn));
  CHECK(vn == doctest::Approx(2.0).epsilon(1e-9));

  const nlohmann::json purity =
      nlohmann::json::parse(measure_report(path, Metric::purity_per_qubit));
  REQUIRE(purity.is_array());
  REQUIRE(purity.size() == 2);
  for (int q = 0; q < 2; ++q) {
    const auto& entry = purity[static_cast<std::size_t>(q)];
    CHECK(entry["qubit"] == q);
    CHECK(entry["purity"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    const auto& rho = entry["rho"];
    REQUIRE(rho.size() == 4);  // row-major 2x2, [re, im] pairs
    CHECK(rho[0][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rho[0][1].get<double>() == 0.0);
    CHECK(rho[1][0].get<double>() == 0.0);
    CHECK(rho[2][0].get<double>() == 0.0);
    CHECK(rho[3][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("measure_report response matches ca_response") {
  const test::TempDir dir;
  const auto path = dir.write("empty3.txt", "qubits 3\n");
  CHECK(measure_report(path, Metric::response) == "0\n1\n0\n1\n0\n1\n0\n1\n");

  const auto bad = dir.write("bad.txt", "qubits 3\nH 9\n");
  try {
    measure_report(bad, Metric::response);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(measure_report(dir.path() / "missing.txt", Metric::mw),
                  std::runtime_error);
}

TEST_CASE("metric names resolve") {
  CHECK(metric_from_name("mw") == Metric::mw);
  CHECK(metric_from_name("vn") == Metric::vn);
  CHECK(metric_from_name("purity_per_qubit") == Metric::purity_per_qubit);
  CHECK(metric_from_name("response") == Metric::response);
  CHECK_FALSE(metric_from_name("entropy").has_value());
}

TEST_CASE("validate_experiment enforces cross-field rules") {
  const test::TempDir dir;
  ExperimentConfig config = mw_experiment(dir.path());
  CHECK_NOTHROW(validate_experiment(config));
  CHECK(config.evo.direction == Direction::maximize);

  SUBCASE("mw/vn reject a target") {
    config.target = parse_target("critical");
    CHECK_THROWS_AS(validate_experiment(config), std::domain_error);
  }
  SUBCASE("mw needs at least 2 qubits") {
    config.evo.n_qubits = 1;
    CHECK_THROWS_AS(validate_experiment(config), std::domain_error);
  }
  SUBCASE("kl needs a target") {
    config.fitness = FitnessKind::kl;
    config.evo.n_qubits = 3;
    CHECK_THROWS_AS(validate_experiment(config), std::domain_error);
  }
  SUBCASE("kl pins the register to 3 qubits and minimizes") {
    config.fitness = FitnessKind::kl;
    config.target = parse_target("rule:90");
    config.evo.n_qubits = 4;
    CHECK_THROWS_AS(validate_experiment(config), std::domain_error);
    config.evo.n_qubits = 3;
    CHECK_NOTHROW(validate_experiment(config));
    CHECK(config.evo.direction == Direction::minimize);
  }
  SUBCASE("shots only make sense for kl") {
    config.shots = 100;
    CHECK_THROWS_AS(validate_experiment(config), std::domain_error);
  }
  SUBCASE("counts must be positive") {
    config.runs = 0;
    CHECK_THROWS_AS(validate_experiment(config), std::domain_error);
    config = mw_experiment(dir.path());
    config.jobs = 0;
    CHECK_THROWS_AS(validate_experiment(config), std::domain_error);
    config = mw_experiment(dir.path());
    config.shots = -1;
    CHECK_THROWS_AS(validate_experiment(config), std::domain_error);
  }
}

TEST_CASE("run_experiment writes the documented files") {
  const test::TempDir dir;
  const auto out = dir.path() / "exp";
  ExperimentConfig config = mw_experiment(out);
  const ExperimentSummary summary = run_experiment(config);

  CHECK(fs::exists(out / "config.json"));
  CHECK(fs::exists(out / "run_0.json"));
  CHECK(fs::exists(out / "run_1.json"));
  CHECK(fs::exists(out / "summary.csv"));
  CHECK(fs::exists(out / "best_circuit.txt"));

  const std::string csv = test::read_file(out / "summary.csv");
  CHECK(csv.back() == '\n');
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 7);  // header + 6 generations
  CHECK(lines[0] ==
        "generation,mean_fitness_mean,mean_fitness_se,best_fitness_mean,"
        "best_fitness_se");
  CHECK(lines[1].substr(0, 2) == "0,");
  CHECK(lines[6].substr(0, 2) == "5,");

  REQUIRE(summary.per_generation.size() == 6);
  CHECK(summary.per_generation.front().generation == 0);
  CHECK(summary.per_generation.back().generation == 5);
  CHECK((summary.best_run == 0 || summary.best_run == 1));
  CHECK(summary.best_fitness >= 0.0);
  CHECK(summary.best_fitness <= 1.0 + 1e-9);

  // the recorded per-run seeds derive from the master seed
  for (int i = 0; i < 2; ++i) {
    const nlohmann::json run = nlohmann::json::parse(
        test::read_file(out / ("run_" + std::to_string(i) + ".json")));
    CHECK(run["seed"].get<std::uint64_t>() ==
          splitmix64(config.evo.seed ^ static_cast<std::uint64_t>(i)));
    const auto& gens = run["generations"];
    REQUIRE(gens.size() == 6);
    for (std::size_t g = 0; g + 1 < gens.size(); ++g) {
      CHECK(gens[g + 1]["best"].get<double>() >= gens[g]["best"].get<double>());
    }
  }

  // best_circuit.txt holds the decoded best chromosome
  const std::string best_text = test::read_file(out / "best_circuit.txt");
  CHECK(best_text.substr(0, 9) == "qubits 3\n");
  CHECK(format_circuit(parse_circuit(best_text)) == best_text);
  CHECK(format_circuit(decode(summary.best_chromosome)) == best_text);
}

TEST_CASE("the summary aggregates the run records") {
  const test::TempDir dir;
  const auto out = dir.path() / "exp";
  ExperimentConfig config = mw_experiment(out);
  config.runs = 3;
  run_experiment(config);

  std::vector<std::vector<double>> best(3);
  std::vector<std::vector<double>> mean(3);
  for (int i = 0; i < 3; ++i) {
    const nlohmann::json run = nlohmann::json::parse(
        test::read_file(out / ("run_" + std::to_string(i) + ".json")));
    for (const auto& g : run["generations"]) {
      best[static_cast<std::size_t>(i)].push_back(g["best"].get<double>());
      mean[static_cast<std::size_t>(i)].push_back(g["mean"].get<double>());
    }
  }

  const auto lines = split_lines(test::read_file(out / "summary.csv"));
  for (std::size_t g = 0; g < 6; ++g) {
    const auto fields = [&] {
      std::vector<double> out_fields;
      std::size_t start = 0;
      const std::string& line = lines[g + 1];
      for (int f = 0; f < 5; ++f) {
        std::size_t end = line.find(',', start);
        if (end == std::string::npos) end = line.size();
        double v = 0.0;
        REQUIRE(parse_double(line.substr(start, end - start), v));
        out_fields.push_back(v);
        start = end + 1;
      }
      return out_fields;
    }();

    double best_sum = 0.0;
    double mean_sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      best_sum += best[static_cast<std::size_t>(i)][g];
      mean_sum += mean[static_cast<std::size_t>(i)][g];
    }
    const double best_mean = best_sum / 3.0;
    const double mean_mean = mean_sum / 3.0;
    double best_var = 0.0;
    double mean_var = 0.0;
    for (int i = 0; i < 3; ++i) {
      best_var += std::pow(best[static_cast<std::size_t>(i)][g] - best_mean, 2);
      mean_var += std::pow(mean[static_cast<std::size_t>(i)][g] - mean_mean, 2);
    }
    const double best_se = std::sqrt(best_var / 2.0) / std::sqrt(3.0);
    const double mean_se = std::sqrt(mean_var / 2.0) / std::sqrt(3.0);

    CHECK(fields[0] == static_cast<double>(g));
    CHECK(fields[1] == doctest::Approx(mean_mean).epsilon(1e-12));
    CHECK(fields[2] == doctest::Approx(mean_se).epsilon(1e-12));
    CHECK(fields[3] == doctest::Approx(best_mean).epsilon(1e-12));
    CHECK(fields[4] == doctest::Approx(best_se).epsilon(1e-12));
  }
}

TEST_CASE("a single run reports zero standard error") {
  const test::TempDir dir;
  ExperimentConfig config = mw_experiment(dir.path() / "one");
  config.runs = 1;
  run_experiment(config);
  const auto lines = split_lines(test::read_file(dir.path() / "one" / "summary.csv"));
  for (std::size_t g = 1; g <= 6; ++g) {
    CHECK(lines[g].find(",0,") != std::string::npos);
    CHECK(lines[g].substr(lines[g].size() - 2) == ",0");
  }
}

TEST_CASE("identical configurations produce byte-identical outputs") {
  const test::TempDir dir;
  ExperimentConfig a = mw_experiment(dir.path() / "a");
  a.runs = 3;
  ExperimentConfig b = mw_experiment(dir.path() / "b");
  b.runs = 3;
  b.jobs = 3;  // parallelism must not leak into the outputs
  run_experiment(a);
  run_experiment(b);

  for (const char* name : {"config.json", "run_0.json", "run_1.json",
                           "run_2.json", "summary.csv", "best_circuit.txt"}) {
    CHECK(test::read_file(dir.path() / "a" / name) ==
          test::read_file(dir.path() / "b" / name));
  }
}

TEST_CASE("run_experiment refuses an unwritable output directory") {
  const test::TempDir dir;
  const auto blocker = dir.write("blocker", "not a directory\n");
  ExperimentConfig config = mw_experiment(blocker / "out");
  CHECK_THROWS_AS(run_experiment(config), std::runtime_error);
}

TEST_CASE("experiment configs round-trip through JSON") {
  const test::TempDir dir;
  ExperimentConfig config = mw_experiment(dir.path());
  config.fitness = FitnessKind::kl;
  config.target = parse_target("rule:110");
  config.evo.n_qubits = 3;
  config.shots = 500;
  config.jobs = 4;  // execution detail, dropped by serialization

  const std::string text = experiment_config_to_json(config);
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["fitness"] == "kl");
  CHECK(j["target"] == "rule:110");
  CHECK(j["qubits"] == 3);
  CHECK(j["gates"] == 4);
  CHECK(j["population"] == 10);
  CHECK(j["elites"] == 2);
  CHECK(j["generations"] == 5);
  CHECK(j["runs"] == 2);
  CHECK(j["mutation"] == 0.1);
  CHECK(j["mutation_mode"] == "gate_replace");
  CHECK(j["reset_nonelites"] == false);
  CHECK(j["shots"] == 500);
  CHECK(j["seed"] == 99);
  CHECK_FALSE(j.contains("out_dir"));
  CHECK_FALSE(j.contains("jobs"));

  const ExperimentConfig loaded = experiment_config_from_json(text);
  CHECK(loaded.fitness == FitnessKind::kl);
  REQUIRE(loaded.target.has_value());
  CHECK(target_to_string(*loaded.target) == "rule:110");
  CHECK(loaded.evo.n_qubits == 3);
  CHECK(loaded.evo.n_gates == 4);
  CHECK(loaded.evo.population_size == 10);
  CHECK(loaded.evo.elite_count == 2);
  CHECK(loaded.evo.n_generations == 5);
  CHECK(loaded.runs == 2);
  CHECK(loaded.evo.mutation_p == 0.1);
  CHECK(loaded.evo.mutation_mode == MutationMode::gate_replace);
  CHECK(loaded.evo.reset_nonelites == false);
  CHECK(loaded.shots == 500);
  CHECK(loaded.evo.seed == 99);
  CHECK(experiment_config_to_json(loaded) == text);
}

TEST_CASE("experiment config JSON rejects unknown keys and junk") {
  CHECK_THROWS_AS(experiment_config_from_json("{\"fitness\": \"mw\", \"bogus\": 1}"),
                  ParseError);
  CHECK_THROWS_AS(experiment_config_from_json("not json"), ParseError);
  CHECK_THROWS_AS(experiment_config_from_json("{\"fitness\": \"nope\"}"), ParseError);
  CHECK_THROWS_AS(experiment_config_from_json("{\"qubits\": \"three\"}"), ParseError);
  CHECK_NOTHROW(experiment_config_from_json("{}"));  // all keys optional
}

TEST_CASE("the experiment config written to disk reloads") {
  const test::TempDir dir;
  const auto out = dir.path() / "exp";
  ExperimentConfig config = mw_experiment(out);
  run_experiment(config);

  ExperimentConfig loaded =
      experiment_config_from_json(test::read_file(out / "config.json"));
  loaded.out_dir = dir.path() / "replay";
  loaded.jobs = 2;
  run_experiment(loaded);
  for (const char* name : {"config.json", "run_0.json", "run_1.json",
                           "summary.csv", "best_circuit.txt"}) {
    CHECK(test::read_file(out / name) ==
          test::read_file(dir.path() / "replay" / name));
  }
}

TEST_CASE("make_fitness wires up each fitness kind") {
  const test::TempDir dir;

  ExperimentConfig mw = mw_experiment(dir.path());
  validate_experiment(mw);
  Chromosome bell;
  bell.n_qubits = 3;
  bell.genes = {{0, 0, 0}, {3, 0, 1}, {0, 2, 0}, {0, 2, 0}};  // H0 CNOT01 H2 H2
  // q0 and q1 form a Bell pair, q2 returns to |0>: Q = (4/3)(1/4 + 1/4 + 0)
  CHECK(make_fitness(mw, 1)(bell) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

  ExperimentConfig vn = mw;
  vn.fitness = FitnessKind::vn;
  validate_experiment(vn);
  CHECK(make_fitness(vn, 1)(bell) == doctest::Approx(2.0).epsilon(1e-9));

  ExperimentConfig kl = mw;
  kl.fitness = FitnessKind::kl;
  kl.target = parse_target("rule:90");
  validate_experiment(kl);
  Chromosome rule90;
  rule90.n_qubits = 3;
  rule90.genes = {{3, 2, 0}, {0, 1, 0}, {1, 1, 0}, {2, 1, 0}};  // CNOT20 + noise on q1
  CHECK(make_fitness(kl, 1)(rule90) <= 1e-9);

  // shot-mode KL is a pure function of (run seed, chromosome)
  kl.shots = 200;
  validate_experiment(kl);
  const ChromosomeFitness f1 = make_fitness(kl, 7);
  const ChromosomeFitness f2 = make_fitness(kl, 7);
  const ChromosomeFitness f3 = make_fitness(kl, 8);
  Chromosome coin;  // response is 0.5 everywhere, so sampling has variance
  coin.n_qubits = 3;
  coin.genes = {{0, 0, 0}, {3, 0, 1}, {0, 1, 0}, {4, 1, 2}};
  const double v1 = f1(coin);
  CHECK(v1 == f1(coin));
  CHECK(v1 == f2(coin));
  CHECK(v1 >= 0.0);
  // a different run seed draws different samples, so the estimate moves
  CHECK(f3(coin) != v1);
}
