#pragma once

#include <vector>

#include "evoqc/density.hpp"
#include "evoqc/statevector.hpp"

namespace evoqc {

// Splitting of an n-qubit state along one qubit: u holds the amplitudes where
// that qubit is 0, v those where it is 1, each ordered by the remaining bits
// ascending. |u|^2 + |v|^2 == 1 for a normalized input.
struct LocalProjection {
  int qubit = 0;
  std::vector<cdouble> u;
  std::vector<cdouble> v;
};

LocalProjection project_on_qubit(const StateVector& state, int qubit);

// Generalized cross product distance
//   D(u, v) = sum_{i<j} |u_i v_j - u_j v_i|^2,
// 0 exactly when u and v are parallel (the qubit is unentangled).
double cross_distance(const LocalProjection& projection);

// How the purity deficit 1 - (1/n) sum_k Tr[rho_k^2] is scaled into a
// measure. `standard` doubles it, giving the usual [0, 1] range; `rescaled`
// divides by 1 - 1/n instead (a variant normalization kept for comparison
// with other implementations).
enum class MwNormalization { standard, rescaled };

// Meyer-Wallach global entanglement via per-qubit cross products:
//   Q = (4/n) sum_k D(u^k, v^k).
// Requires n >= 2.
double meyer_wallach_projections(const StateVector& state);

// The same measure computed through reduced density matrices:
//   Q = 2 (1 - (1/n) sum_k Tr[rho_k^2])   (standard normalization).
// Independent of meyer_wallach_projections in implementation; the two agree
// to 1e-9 and cross-check each other. Requires n >= 2.
double meyer_wallach_purity(const StateVector& state,
                            MwNormalization normalization = MwNormalization::standard);

// S(rho) = -sum_i lambda_i log2 lambda_i. Eigenvalues below 1e-12 are treated
// as exact zeros (0 log 0 := 0); tiny negatives from floating-point noise, up
// to -1e-9, are clamped. Result is in [0, log2(dim)].
double von_neumann_entropy(const DensityMatrix& rho);

// Sum over qubits of the entropy of each single-qubit reduction, in [0, n].
// n of it is attained by states whose every qubit is maximally mixed.
double entropy_fitness(const StateVector& state);

}  // namespace evoqc
