#include "evoqc/fitness.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "evoqc/entanglement.hpp"
#include "evoqc/errors.hpp"
#include "evoqc/format.hpp"

namespace evoqc {

namespace {

constexpr double kKlEpsilon = 1e-10;

void check_ca_circuit(const Circuit& circuit) {
  if (circuit.n_qubits != 3) {
    throw std::domain_error("CA response needs a 3-qubit circuit, got " +
                            std::to_string(circuit.n_qubits) + " qubits");
  }
}

}  // namespace

TargetTable critical_ca_table() {
  return TargetTable{{0.394221, 0.094721, 0.239492, 0.408455, 0.0, 0.730203,
                      0.915034, 1.0}};
}

TargetTable rule_to_table(int rule) {
  if (rule < 0 || rule > 255) {
    throw std::domain_error("Wolfram rule must be in [0, 255], got " +
                            std::to_string(rule));
  }
  TargetTable table;
  for (int i = 0; i < 8; ++i) {
    table.probs[static_cast<std::size_t>(i)] = (rule >> i) & 1;
  }
  return table;
}

TargetTable load_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open table file " + path.string());
  }
  TargetTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find('\r') != std::string::npos) {
      throw ParseError(line_no, "carriage return found; use LF line endings");
    }
    if (line_no > 8) {
      throw ParseError(line_no, "table file must have exactly 8 lines");
    }
    double value = 0.0;
    if (!parse_double(line, value)) {
      throw ParseError(line_no, "invalid probability '" + line + "'");
    }
    if (value < 0.0 || value > 1.0) {
      throw ParseError(line_no, "probability " + format_double(value) +
                                    " outside [0, 1]");
    }
    table.probs[static_cast<std::size_t>(line_no - 1)] = value;
  }
  if (line_no < 8) {
    throw ParseError(line_no, "table file must have exactly 8 lines, got " +
                                  std::to_string(line_no));
  }
  return table;
}

std::string format_table(const TargetTable& table) {
  std::string out;
  for (double p : table.probs) {
    out += format_double(p);
    out += '\n';
  }
  return out;
}

ResponseVector ca_response(const Circuit& circuit) {
  check_ca_circuit(circuit);
  ResponseVector response;
  for (int neighborhood = 0; neighborhood < 8; ++neighborhood) {
    // basis index == neighborhood: q2 = l, q1 = m, q0 = r.
    const StateVector out = run_circuit(circuit, basis_state(3, neighborhood));
    response[static_cast<std::size_t>(neighborhood)] =
        marginal_probability(out, 0, 1);
  }
  return response;
}

ResponseVector ca_response(const Circuit& circuit, int shots, Rng& rng) {
  check_ca_circuit(circuit);
  if (shots < 1) throw std::domain_error("shots must be at least 1");
  ResponseVector exact = ca_response(circuit);
  ResponseVector sampled;
  for (std::size_t i = 0; i < 8; ++i) {
    int ones = 0;
    for (int s = 0; s < shots; ++s) {
      if (rng.next_double() < exact[i]) ++ones;
    }
    sampled[i] = static_cast<double>(ones) / shots;
  }
  return sampled;
}

double kl_divergence(const std::array<double, 8>& p,
                     const std::array<double, 8>& q) {
  double p_sum = 0.0;
  double q_sum = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) {
      throw std::domain_error("KL inputs must be non-negative");
    }
    p_sum += p[i];
    q_sum += q[i];
  }
  if (p_sum <= 0.0 || q_sum <= 0.0) {
    throw std::domain_error("KL input table is all zeros");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double pn = p[i] / p_sum;
    if (pn == 0.0) continue;
    const double qn = q[i] / q_sum + kKlEpsilon;
    sum += pn * std::log2(pn / qn);
  }
  return sum < 0.0 ? 0.0 : sum;
}

double kl_fitness(const Circuit& circuit, const TargetTable& target) {
  return kl_divergence(target.probs, ca_response(circuit));
}

double kl_fitness(const Circuit& circuit, const TargetTable& target, int shots,
                  Rng& rng) {
  return kl_divergence(target.probs, ca_response(circuit, shots, rng));
}

double mw_fitness(const Circuit& circuit) {
  if (circuit.n_qubits < 2) {
    throw std::domain_error("Meyer-Wallach fitness needs at least 2 qubits");
  }
  const StateVector prepared =
      run_circuit(circuit, basis_state(circuit.n_qubits, 0));
  return meyer_wallach_purity(prepared);
}

double vn_fitness(const Circuit& circuit) {
  if (circuit.n_qubits < 2) {
    throw std::domain_error("entropy fitness needs at least 2 qubits");
  }
  const StateVector prepared =
      run_circuit(circuit, basis_state(circuit.n_qubits, 0));
  return entropy_fitness(prepared);
}

double CachingFitness::operator()(const Chromosome& chromosome) {
  const std::string key = chromosome_to_csv(chromosome);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const double value = fn_(chromosome);
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(key, value).first->second;
}

std::size_t CachingFitness::cache_size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

}  // namespace evoqc
