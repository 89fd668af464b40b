#include "evoqc/statevector.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "evoqc/errors.hpp"
#include "evoqc/format.hpp"

namespace evoqc {

namespace {

constexpr double kNormTolerance = 1e-10;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_n_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::domain_error("n_qubits must be in [1, " +
                            std::to_string(kMaxQubits) + "], got " +
                            std::to_string(n_qubits));
  }
}

void check_gate(const GateInstance& gate, int n_qubits) {
  if (gate.qubit_a < 0 || gate.qubit_a >= n_qubits) {
    throw std::domain_error("gate qubit " + std::to_string(gate.qubit_a) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
  }
  if (is_two_qubit(gate.kind)) {
    if (!gate.qubit_b.has_value()) {
      throw std::domain_error(std::string(gate_name(gate.kind)) +
                              " requires a second qubit");
    }
    const int b = *gate.qubit_b;
    if (b < 0 || b >= n_qubits) {
      throw std::domain_error("gate qubit " + std::to_string(b) +
                              " out of range for " + std::to_string(n_qubits) +
                              " qubits");
    }
    if (b == gate.qubit_a) {
      throw std::domain_error(std::string(gate_name(gate.kind)) +
                              " operands must be distinct");
    }
  } else if (gate.qubit_b.has_value()) {
    throw std::domain_error(std::string(gate_name(gate.kind)) +
                            " takes a single qubit");
  }
}

// Shared by apply_gate and run_circuit so both compose bit-exactly.
void apply_gate_inplace(std::vector<cdouble>& amps, const GateInstance& gate) {
  const std::size_t dim = amps.size();
  switch (gate.kind) {
    case GateKind::H: {
      const std::size_t bit = std::size_t{1} << gate.qubit_a;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const cdouble a = amps[i];
        const cdouble b = amps[i | bit];
        amps[i] = (a + b) * kInvSqrt2;
        amps[i | bit] = (a - b) * kInvSqrt2;
      }
      break;
    }
    case GateKind::X: {
      const std::size_t bit = std::size_t{1} << gate.qubit_a;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        std::swap(amps[i], amps[i | bit]);
      }
      break;
    }
    case GateKind::Z: {
      const std::size_t bit = std::size_t{1} << gate.qubit_a;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) amps[i] = -amps[i];
      }
      break;
    }
    case GateKind::CNOT: {
      const std::size_t control = std::size_t{1} << gate.qubit_a;
      const std::size_t target = std::size_t{1} << *gate.qubit_b;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & control) && !(i & target)) std::swap(amps[i], amps[i | target]);
      }
      break;
    }
    case GateKind::SWAP: {
      const std::size_t abit = std::size_t{1} << gate.qubit_a;
      const std::size_t bbit = std::size_t{1} << *gate.qubit_b;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & abit) && !(i & bbit)) std::swap(amps[i], amps[i ^ (abit | bbit)]);
      }
      break;
    }
  }
}

}  // namespace

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::CNOT || kind == GateKind::SWAP;
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

std::optional<GateKind> gate_from_name(std::string_view name) {
  if (name == "H") return GateKind::H;
  if (name == "X") return GateKind::X;
  if (name == "Z") return GateKind::Z;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "SWAP") return GateKind::SWAP;
  return std::nullopt;
}

StateVector::StateVector(int n_qubits, std::vector<cdouble> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_n_qubits(n_qubits);
  const std::size_t expected = std::size_t{1} << n_qubits;
  if (amplitudes_.size() != expected) {
    throw std::domain_error("expected " + std::to_string(expected) +
                            " amplitudes, got " +
                            std::to_string(amplitudes_.size()));
  }
  double norm2 = 0.0;
  for (const cdouble& c : amplitudes_) norm2 += std::norm(c);
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw std::domain_error("state is not normalized: |psi|^2 = " +
                            format_double(norm2));
  }
}

StateVector basis_state(int n_qubits, int index) {
  check_n_qubits(n_qubits);
  const int dim = 1 << n_qubits;
  if (index < 0 || index >= dim) {
    throw std::domain_error("basis index " + std::to_string(index) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
  }
  std::vector<cdouble> amps(static_cast<std::size_t>(dim), cdouble{0.0, 0.0});
  amps[static_cast<std::size_t>(index)] = cdouble{1.0, 0.0};
  return StateVector(n_qubits, std::move(amps));
}

StateVector apply_gate(const StateVector& state, const GateInstance& gate) {
  check_gate(gate, state.n_qubits());
  std::vector<cdouble> amps = state.amplitudes();
  apply_gate_inplace(amps, gate);
  return StateVector(state.n_qubits(), std::move(amps));
}

StateVector run_circuit(const Circuit& circuit, const StateVector& initial) {
  if (circuit.n_qubits != initial.n_qubits()) {
    throw std::domain_error("circuit is " + std::to_string(circuit.n_qubits) +
                            " qubits wide but the state has " +
                            std::to_string(initial.n_qubits()));
  }
  std::vector<cdouble> amps = initial.amplitudes();
  for (const GateInstance& gate : circuit.gates) {
    check_gate(gate, circuit.n_qubits);
    apply_gate_inplace(amps, gate);
  }
  return StateVector(initial.n_qubits(), std::move(amps));
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> probs;
  probs.reserve(state.dim());
  for (const cdouble& c : state.amplitudes()) probs.push_back(std::norm(c));
  return probs;
}

double marginal_probability(const StateVector& state, int qubit, int value) {
  if (qubit < 0 || qubit >= state.n_qubits()) {
    throw std::domain_error("qubit " + std::to_string(qubit) +
                            " out of range for " +
                            std::to_string(state.n_qubits()) + " qubits");
  }
  if (value != 0 && value != 1) {
    throw std::domain_error("qubit value must be 0 or 1");
  }
  const std::size_t bit = std::size_t{1} << qubit;
  const std::size_t want = value ? bit : 0;
  double p = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & bit) == want) p += std::norm(amps[i]);
  }
  return p;
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
  Circuit circuit;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find('\r') != std::string::npos) {
      throw ParseError(line_no, "carriage return found; use LF line endings");
    }
    const auto tokens = split_tokens(line);
    if (tokens.empty()) {
      throw ParseError(line_no, "blank line");
    }
    if (!have_header) {
      if (tokens.size() != 2 || tokens[0] != "qubits") {
        throw ParseError(line_no, "expected header 'qubits <n>'");
      }
      int n = 0;
      if (!parse_int(tokens[1], n)) {
        throw ParseError(line_no, "invalid qubit count '" + tokens[1] + "'");
      }
      if (n < 1 || n > kMaxQubits) {
        throw ParseError(line_no, "qubit count must be in [1, " +
                                      std::to_string(kMaxQubits) + "]");
      }
      circuit.n_qubits = n;
      have_header = true;
      continue;
    }
    const auto kind = gate_from_name(tokens[0]);
    if (!kind) {
      throw ParseError(line_no, "unknown gate kind '" + tokens[0] + "'");
    }
    const std::size_t arity = is_two_qubit(*kind) ? 2 : 1;
    if (tokens.size() != arity + 1) {
      throw ParseError(line_no, std::string(gate_name(*kind)) + " takes " +
                                    std::to_string(arity) + " qubit operand" +
                                    (arity == 1 ? "" : "s"));
    }
    GateInstance gate;
    gate.kind = *kind;
    if (!parse_int(tokens[1], gate.qubit_a)) {
      throw ParseError(line_no, "invalid qubit index '" + tokens[1] + "'");
    }
    if (arity == 2) {
      int b = 0;
      if (!parse_int(tokens[2], b)) {
        throw ParseError(line_no, "invalid qubit index '" + tokens[2] + "'");
      }
      gate.qubit_b = b;
    }
    try {
      check_gate(gate, circuit.n_qubits);
    } catch (const std::domain_error& e) {
      throw ParseError(line_no, e.what());
    }
    circuit.gates.push_back(gate);
  }
  if (!have_header) {
    throw ParseError("empty circuit file; expected header 'qubits <n>'");
  }
  return circuit;
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

Circuit parse_circuit_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open circuit file " + path.string());
  }
  return parse_circuit(in);
}

std::string format_circuit(const Circuit& circuit) {
  std::string out = "qubits " + std::to_string(circuit.n_qubits) + "\n";
  for (const GateInstance& gate : circuit.gates) {
    out += gate_name(gate.kind);
    out += ' ';
    out += std::to_string(gate.qubit_a);
    if (gate.qubit_b.has_value()) {
      out += ' ';
      out += std::to_string(*gate.qubit_b);
    }
    out += '\n';
  }
  return out;
}

}  // namespace evoqc
