#pragma once

#include <vector>

#include "evoqc/statevector.hpp"

namespace evoqc {

// Hermitian, trace-one matrix over a 2^k dimensional register, row major.
// Hermiticity and trace are checked on construction (1e-10); positive
// semidefiniteness is not, since it costs a full eigendecomposition, but
// every matrix produced by this module satisfies it by construction.
class DensityMatrix {
 public:
  DensityMatrix(std::size_t dim, std::vector<cdouble> entries);

  std::size_t dim() const { return dim_; }
  const std::vector<cdouble>& entries() const { return entries_; }
  cdouble at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  bool operator==(const DensityMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<cdouble> entries_;
};

// rho = |psi><psi|.
DensityMatrix density_from_state(const StateVector& state);

// Traces out every qubit not in `keep`. Result index bit j corresponds to the
// j-th smallest kept qubit. Keeping all qubits returns the input unchanged;
// `keep` must be non-empty, in range and duplicate-free.
DensityMatrix partial_trace(const DensityMatrix& rho, int n_qubits,
                            const std::vector<int>& keep);

// Single-qubit reduced density matrix of every qubit, in qubit order.
std::vector<DensityMatrix> reduced_per_qubit(const StateVector& state);

// Tr[rho^2]; 1 for pure states, 1/dim for the maximally mixed state.
double purity(const DensityMatrix& rho);

// All eigenvalues, ascending. 2x2 matrices use the closed form; larger ones
// a cyclic Jacobi iteration on the Hermitian matrix (off-diagonal Frobenius
// norm driven below 1e-12 of the matrix scale).
std::vector<double> hermitian_eigenvalues(const DensityMatrix& rho);

}  // namespace evoqc
