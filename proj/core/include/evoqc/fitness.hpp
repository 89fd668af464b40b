#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <unordered_map>

#include "evoqc/genome.hpp"
#include "evoqc/rng.hpp"
#include "evoqc/statevector.hpp"

namespace evoqc {

// Probability that a cell becomes 1 for each of the 8 neighborhood states
// (l, m, r), indexed l*4 + m*2 + r.
struct TargetTable {
  std::array<double, 8> probs{};

  bool operator==(const TargetTable&) const = default;
};

// Transition table of a stochastic elementary CA at criticality.
TargetTable critical_ca_table();

// Deterministic table of a Wolfram rule in [0, 255]: entry i is bit i of the
// rule number.
TargetTable rule_to_table(int rule);

// Custom table file: 8 lines, one decimal in [0, 1] per line.
TargetTable load_table_file(const std::filesystem::path& path);
std::string format_table(const TargetTable& table);

using ResponseVector = std::array<double, 8>;

// Response of a 3-qubit circuit read as a CA cell update: for each
// neighborhood (l, m, r) the register is prepared in the basis state with
// q2 = l, q1 = m, q0 = r, the circuit is run, and the entry is P(q0 == 1).
ResponseVector ca_response(const Circuit& circuit);

// Same, estimated from `shots` seeded measurement samples per neighborhood.
ResponseVector ca_response(const Circuit& circuit, int shots, Rng& rng);

// D_KL(P || Q) in bits. Both tables are normalized to distributions first
// (all-zero input is a domain error). 1e-10 is added to every normalized
// denominator entry so zero-probability responses stay finite; zero P entries
// contribute nothing (0 log 0 := 0). The smoothing can push an exact match a
// hair below zero, so the result is clamped at 0.
double kl_divergence(const std::array<double, 8>& p,
                     const std::array<double, 8>& q);

// kl_divergence(target, ca_response(circuit)); minimized by circuits whose
// response matches the target. Circuit must be 3 qubits wide.
double kl_fitness(const Circuit& circuit, const TargetTable& target);
double kl_fitness(const Circuit& circuit, const TargetTable& target, int shots,
                  Rng& rng);

// Meyer-Wallach entanglement of the state the circuit prepares from |0...0>.
double mw_fitness(const Circuit& circuit);

// Summed per-qubit von Neumann entropy of the prepared state.
double vn_fitness(const Circuit& circuit);

using ChromosomeFitness = std::function<double(const Chromosome&)>;

// Memoizes a pure chromosome fitness, keyed by the gene serialization.
// Elites recur verbatim across generations, so the evolutionary loop hits
// this cache constantly. Safe for concurrent insert-or-get.
class CachingFitness {
 public:
  explicit CachingFitness(ChromosomeFitness fn) : fn_(std::move(fn)) {}

  double operator()(const Chromosome& chromosome);

  std::size_t cache_size() const;

 private:
  ChromosomeFitness fn_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, double> cache_;
};

}  // namespace evoqc
