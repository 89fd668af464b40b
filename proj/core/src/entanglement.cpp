#include "evoqc/entanglement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evoqc {

namespace {

constexpr double kEigenZero = 1e-12;
constexpr double kEigenNegativeSlack = 1e-9;

void check_multi_qubit(const StateVector& state, const char* what) {
  if (state.n_qubits() < 2) {
    throw std::domain_error(std::string(what) +
                            " requires at least 2 qubits, got " +
                            std::to_string(state.n_qubits()));
  }
}

}  // namespace

LocalProjection project_on_qubit(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits()) {
    throw std::domain_error("qubit " + std::to_string(qubit) +
                            " out of range for " +
                            std::to_string(state.n_qubits()) + " qubits");
  }
  const auto& amps = state.amplitudes();
  const std::size_t half = amps.size() / 2;
  const std::size_t low_mask = (std::size_t{1} << qubit) - 1;

  LocalProjection proj;
  proj.qubit = qubit;
  proj.u.resize(half);
  proj.v.resize(half);
  for (std::size_t j = 0; j < half; ++j) {
    // Insert the projected qubit's bit at position `qubit`, keeping the
    // remaining bits of j in ascending order.
    const std::size_t base = ((j & ~low_mask) << 1) | (j & low_mask);
    proj.u[j] = amps[base];
    proj.v[j] = amps[base | (std::size_t{1} << qubit)];
  }
  return proj;
}

double cross_distance(const LocalProjection& projection) {
  const auto& u = projection.u;
  const auto& v = projection.v;
  if (u.size() != v.size()) {
    throw std::domain_error("projection halves differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      sum += std::norm(u[i] * v[j] - u[j] * v[i]);
    }
  }
  return sum;
}

double meyer_wallach_projections(const StateVector& state) {
  check_multi_qubit(state, "meyer_wallach_projections");
  const int n = state.n_qubits();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    sum += cross_distance(project_on_qubit(state, k));
  }
  return 4.0 / n * sum;
}

double meyer_wallach_purity(const StateVector& state, MwNormalization normalization) {
  check_multi_qubit(state, "meyer_wallach_purity");
  const int n = state.n_qubits();
  double purity_sum = 0.0;
  for (const DensityMatrix& rho : reduced_per_qubit(state)) {
    purity_sum += purity(rho);
  }
  const double deficit = 1.0 - purity_sum / n;
  switch (normalization) {
    case MwNormalization::standard: return 2.0 * deficit;
    case MwNormalization::rescaled: return deficit / (1.0 - 1.0 / n);
  }
  throw std::domain_error("unknown Meyer-Wallach normalization");
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double entropy = 0.0;
  for (double lambda : hermitian_eigenvalues(rho)) {
    if (lambda < -kEigenNegativeSlack) {
      throw std::domain_error("matrix has eigenvalue " + std::to_string(lambda) +
                              "; not positive semidefinite");
    }
    if (lambda < kEigenZero) continue;  // 0 log 0 := 0
    entropy -= lambda * std::log2(lambda);
  }
  return entropy < 0.0 ? 0.0 : entropy;
}

double entropy_fitness(const StateVector& state) {
  double sum = 0.0;
  for (const DensityMatrix& rho : reduced_per_qubit(state)) {
    sum += von_neumann_entropy(rho);
  }
  return sum;
}

}  // namespace evoqc
