#pragma once

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "evoqc/rng.hpp"
#include "evoqc/statevector.hpp"

namespace evoqc::test {

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    auto base = std::filesystem::temp_directory_path();
    path_ = base / ("evoqc_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline double gaussian(Rng& rng) {
  double u1 = rng.next_double();
  while (u1 <= 0.0) u1 = rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Haar-like random pure state: complex Gaussian amplitudes, normalized.
inline StateVector random_state(int n_qubits, Rng& rng) {
  std::vector<cdouble> amps(std::size_t{1} << n_qubits);
  double norm2 = 0.0;
  for (cdouble& a : amps) {
    a = cdouble{gaussian(rng), gaussian(rng)};
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cdouble& a : amps) a *= inv;
  return StateVector(n_qubits, std::move(amps));
}

inline StateVector ghz(int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<cdouble> amps(dim);
  const double r = 1.0 / std::sqrt(2.0);
  amps[0] = r;
  amps[dim - 1] = r;
  return StateVector(n_qubits, std::move(amps));
}

inline StateVector bell() { return ghz(2); }

// (|001> + |010> + |100>) / sqrt(3)
inline StateVector w3() {
  std::vector<cdouble> amps(8);
  const double r = 1.0 / std::sqrt(3.0);
  amps[1] = r;
  amps[2] = r;
  amps[4] = r;
  return StateVector(3, std::move(amps));
}

inline Circuit bell_circuit() {
  Circuit c;
  c.n_qubits = 2;
  c.gates = {{GateKind::H, 0, {}}, {GateKind::CNOT, 0, 1}};
  return c;
}

inline Circuit ghz3_circuit() {
  Circuit c;
  c.n_qubits = 3;
  c.gates = {{GateKind::H, 0, {}}, {GateKind::CNOT, 0, 1}, {GateKind::CNOT, 1, 2}};
  return c;
}

// Uniform random circuit over the default gate kinds, for property tests.
inline Circuit random_circuit(int n_qubits, int n_gates, Rng& rng) {
  static const GateKind kinds[] = {GateKind::H, GateKind::X, GateKind::Z,
                                   GateKind::CNOT, GateKind::SWAP};
  Circuit c;
  c.n_qubits = n_qubits;
  for (int i = 0; i < n_gates; ++i) {
    GateInstance g;
    g.kind = kinds[rng.next_below(5)];
    g.qubit_a = rng.next_below(n_qubits);
    if (is_two_qubit(g.kind)) {
      if (n_qubits < 2) {
        g.kind = GateKind::H;
      } else {
        int b = rng.next_below(n_qubits - 1);
        if (b >= g.qubit_a) ++b;
        g.qubit_b = b;
      }
    }
    c.gates.push_back(g);
  }
  return c;
}

}  // namespace evoqc::test
