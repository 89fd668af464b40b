#pragma once

#include <complex>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evoqc {

using cdouble = std::complex<double>;

// Exact dense simulation is quadratic in the state size, so the register
// width is capped where a full density matrix (2^n x 2^n) is still cheap.
inline constexpr int kMaxQubits = 8;

enum class GateKind { H, X, Z, CNOT, SWAP };

bool is_two_qubit(GateKind kind);
const char* gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

// One gate application. `qubit_b` is the CNOT target / second SWAP operand
// and must be absent for single-qubit kinds.
struct GateInstance {
  GateKind kind;
  int qubit_a = 0;
  std::optional<int> qubit_b;

  bool operator==(const GateInstance&) const = default;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<GateInstance> gates;

  bool operator==(const Circuit&) const = default;
};

// Normalized pure state of n qubits, 1 <= n <= kMaxQubits.
//
// Amplitude order: basis index bit k holds the value of qubit k, i.e. qubit 0
// is the least significant bit of the index. Index 5 = 0b101 is the basis
// state with qubits 0 and 2 set.
class StateVector {
 public:
  // Validates the register width and that the 2-norm is 1 within 1e-10.
  StateVector(int n_qubits, std::vector<cdouble> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amplitudes_; }

  bool operator==(const StateVector&) const = default;

 private:
  int n_qubits_;
  std::vector<cdouble> amplitudes_;
};

// |index> as a state vector. index is the basis index described above.
StateVector basis_state(int n_qubits, int index);

// Applies one gate. Referentially transparent; the input is not modified.
StateVector apply_gate(const StateVector& state, const GateInstance& gate);

// Applies circuit.gates in order to `initial`. The circuit and state widths
// must agree. Composing two circuits equals running them back to back,
// bit-exactly, because gates are applied with the same kernel either way.
StateVector run_circuit(const Circuit& circuit, const StateVector& initial);

// Measurement distribution over all 2^n basis states.
std::vector<double> probabilities(const StateVector& state);

// P(qubit == value) for value in {0, 1}.
double marginal_probability(const StateVector& state, int qubit, int value);

// Circuit text format:
//
//   qubits 3
//   H 0
//   CNOT 0 1
//
// First line declares the width; each following line is an uppercase gate
// name with one or two qubit indices. LF line endings. The parser rejects
// unknown kinds, out-of-range indices, arity mismatches and repeated operands
// with the offending line number.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit(const std::string& text);
Circuit parse_circuit_file(const std::filesystem::path& path);
std::string format_circuit(const Circuit& circuit);

}  // namespace evoqc
