#pragma once

#include <string>
#include <vector>

#include "evoqc/rng.hpp"
#include "evoqc/statevector.hpp"

namespace evoqc {

// The set of gate kinds a gene may select from. gate_id in a gene is an index
// into `kinds`.
struct GatePool {
  std::vector<GateKind> kinds;

  int size() const { return static_cast<int>(kinds.size()); }
  bool two_qubit(int gate_id) const { return is_two_qubit(kinds[gate_id]); }
  bool has_single_qubit() const;
};

GatePool default_gate_pool();  // {H, X, Z, CNOT, SWAP}

// One gate as three integers. qubit_b is kept for single-qubit gates too so
// every gene has the same shape; decode ignores it there.
struct GateGene {
  int gate_id = 0;
  int qubit_a = 0;
  int qubit_b = 0;

  bool operator==(const GateGene&) const = default;
};

struct Chromosome {
  int n_qubits = 0;
  std::vector<GateGene> genes;

  bool operator==(const Chromosome&) const = default;
};

// Fixes an invalid connection: a two-qubit gene with qubit_a == qubit_b gets
// qubit_b resampled uniformly from the other indices. On a single-qubit
// register, where no distinct operand exists, the gate itself is resampled
// to a single-qubit kind instead (domain error if the pool has none).
GateGene repair(GateGene gene, int n_qubits, Rng& rng,
                const GatePool& pool = default_gate_pool());

// Uniform random gene, post-repair.
GateGene random_gene(int n_qubits, Rng& rng,
                     const GatePool& pool = default_gate_pool());

// n_gates uniform random genes. Duplicates are allowed.
Chromosome random_chromosome(int n_qubits, int n_gates, Rng& rng,
                             const GatePool& pool = default_gate_pool());

enum class MutationMode {
  gate_replace,  // each gene independently replaced with probability p
  full_replace,  // with probability p the whole chromosome is redrawn
};

Chromosome mutate(const Chromosome& chromosome, double p, MutationMode mode,
                  Rng& rng, const GatePool& pool = default_gate_pool());

// Chromosome -> runnable circuit. Throws ParseError on a gate_id outside the
// pool; genes produced by this module are always decodable.
Circuit decode(const Chromosome& chromosome,
               const GatePool& pool = default_gate_pool());

// One line of 3 * n_genes comma-separated integers: gate_id,qubit_a,qubit_b
// per gene. Round-trips exactly.
std::string chromosome_to_csv(const Chromosome& chromosome);

// Strict parse of the line format above; validates gene count and ranges
// against the register width and pool.
Chromosome chromosome_from_csv(int n_qubits, const std::string& line,
                               const GatePool& pool = default_gate_pool());

}  // namespace evoqc
