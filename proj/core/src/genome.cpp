#include "evoqc/genome.hpp"

#include <stdexcept>
#include <string>

#include "evoqc/errors.hpp"
#include "evoqc/format.hpp"

namespace evoqc {

bool GatePool::has_single_qubit() const {
  for (GateKind kind : kinds) {
    if (!is_two_qubit(kind)) return true;
  }
  return false;
}

GatePool default_gate_pool() {
  return GatePool{{GateKind::H, GateKind::X, GateKind::Z, GateKind::CNOT,
                   GateKind::SWAP}};
}

namespace {

void check_pool(const GatePool& pool) {
  if (pool.kinds.empty()) throw std::domain_error("gate pool is empty");
}

void check_register(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::domain_error("n_qubits must be in [1, " +
                            std::to_string(kMaxQubits) + "]");
  }
}

}  // namespace

GateGene repair(GateGene gene, int n_qubits, Rng& rng, const GatePool& pool) {
  check_pool(pool);
  check_register(n_qubits);
  if (!pool.two_qubit(gene.gate_id) || gene.qubit_a != gene.qubit_b) {
    return gene;
  }
  if (n_qubits == 1) {
    if (!pool.has_single_qubit()) {
      throw std::domain_error(
          "two-qubit gate on a 1-qubit register and the pool has no "
          "single-qubit gate to fall back on");
    }
    do {
      gene.gate_id = rng.next_below(pool.size());
    } while (pool.two_qubit(gene.gate_id));
    return gene;
  }
  // Uniform over the other n - 1 indices with a single draw.
  int b = rng.next_below(n_qubits - 1);
  if (b >= gene.qubit_a) ++b;
  gene.qubit_b = b;
  return gene;
}

GateGene random_gene(int n_qubits, Rng& rng, const GatePool& pool) {
  check_pool(pool);
  check_register(n_qubits);
  GateGene gene;
  gene.gate_id = rng.next_below(pool.size());
  gene.qubit_a = rng.next_below(n_qubits);
  gene.qubit_b = rng.next_below(n_qubits);
  return repair(gene, n_qubits, rng, pool);
}

Chromosome random_chromosome(int n_qubits, int n_gates, Rng& rng,
                             const GatePool& pool) {
  if (n_gates < 1) throw std::domain_error("n_gates must be at least 1");
  Chromosome chromosome;
  chromosome.n_qubits = n_qubits;
  chromosome.genes.reserve(static_cast<std::size_t>(n_gates));
  for (int i = 0; i < n_gates; ++i) {
    chromosome.genes.push_back(random_gene(n_qubits, rng, pool));
  }
  return chromosome;
}

Chromosome mutate(const Chromosome& chromosome, double p, MutationMode mode,
                  Rng& rng, const GatePool& pool) {
  if (p < 0.0 || p > 1.0) {
    throw std::domain_error("mutation probability must be in [0, 1]");
  }
  switch (mode) {
    case MutationMode::gate_replace: {
      Chromosome out = chromosome;
      for (GateGene& gene : out.genes) {
        if (rng.next_double() < p) {
          gene = random_gene(chromosome.n_qubits, rng, pool);
        }
      }
      return out;
    }
    case MutationMode::full_replace: {
      if (rng.next_double() < p) {
        return random_chromosome(chromosome.n_qubits,
                                 static_cast<int>(chromosome.genes.size()), rng,
                                 pool);
      }
      return chromosome;
    }
  }
  throw std::domain_error("unknown mutation mode");
}

Circuit decode(const Chromosome& chromosome, const GatePool& pool) {
  check_pool(pool);
  Circuit circuit;
  circuit.n_qubits = chromosome.n_qubits;
  circuit.gates.reserve(chromosome.genes.size());
  for (std::size_t i = 0; i < chromosome.genes.size(); ++i) {
    const GateGene& gene = chromosome.genes[i];
    if (gene.gate_id < 0 || gene.gate_id >= pool.size()) {
      throw ParseError("gene " + std::to_string(i) + " has gate_id " +
                       std::to_string(gene.gate_id) +
                       " outside the pool of " + std::to_string(pool.size()));
    }
    GateInstance gate;
    gate.kind = pool.kinds[static_cast<std::size_t>(gene.gate_id)];
    gate.qubit_a = gene.qubit_a;
    if (is_two_qubit(gate.kind)) gate.qubit_b = gene.qubit_b;
    circuit.gates.push_back(gate);
  }
  return circuit;
}

std::string chromosome_to_csv(const Chromosome& chromosome) {
  std::string out;
  for (std::size_t i = 0; i < chromosome.genes.size(); ++i) {
    const GateGene& gene = chromosome.genes[i];
    if (i > 0) out += ',';
    out += std::to_string(gene.gate_id);
    out += ',';
    out += std::to_string(gene.qubit_a);
    out += ',';
    out += std::to_string(gene.qubit_b);
  }
  return out;
}

Chromosome chromosome_from_csv(int n_qubits, const std::string& line,
                               const GatePool& pool) {
  check_pool(pool);
  check_register(n_qubits);
  std::vector<int> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::string token = line.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    int value = 0;
    if (!parse_int(token, value)) {
      throw ParseError("invalid integer '" + token + "' in chromosome");
    }
    values.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.empty() || values.size() % 3 != 0) {
    throw ParseError("chromosome length must be a positive multiple of 3, got " +
                     std::to_string(values.size()));
  }
  Chromosome chromosome;
  chromosome.n_qubits = n_qubits;
  for (std::size_t i = 0; i < values.size(); i += 3) {
    GateGene gene{values[i], values[i + 1], values[i + 2]};
    if (gene.gate_id < 0 || gene.gate_id >= pool.size()) {
      throw ParseError("gate_id " + std::to_string(gene.gate_id) +
                       " outside the pool of " + std::to_string(pool.size()));
    }
    if (gene.qubit_a < 0 || gene.qubit_a >= n_qubits || gene.qubit_b < 0 ||
        gene.qubit_b >= n_qubits) {
      throw ParseError("qubit index out of range in gene " +
                       std::to_string(i / 3));
    }
    if (pool.two_qubit(gene.gate_id) && gene.qubit_a == gene.qubit_b) {
      throw ParseError("two-qubit gene " + std::to_string(i / 3) +
                       " has identical operands");
    }
    chromosome.genes.push_back(gene);
  }
  return chromosome;
}

}  // namespace evoqc
