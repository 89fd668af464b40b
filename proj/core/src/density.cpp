#include "evoqc/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "evoqc/format.hpp"

namespace evoqc {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-10;

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<cdouble> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (!is_power_of_two(dim_)) {
    throw std::domain_error("density matrix dimension must be a power of two");
  }
  if (entries_.size() != dim_ * dim_) {
    throw std::domain_error("expected " + std::to_string(dim_ * dim_) +
                            " entries, got " + std::to_string(entries_.size()));
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    trace += entries_[i * dim_ + i].real();
    for (std::size_t j = i; j < dim_; ++j) {
      const cdouble delta = entries_[i * dim_ + j] - std::conj(entries_[j * dim_ + i]);
      if (std::abs(delta) > kHermitianTolerance) {
        throw std::domain_error("matrix is not Hermitian at (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw std::domain_error("matrix trace is " + format_double(trace) +
                            ", expected 1");
  }
}

DensityMatrix density_from_state(const StateVector& state) {
  const auto& amps = state.amplitudes();
  const std::size_t dim = amps.size();
  std::vector<cdouble> entries(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      entries[i * dim + j] = amps[i] * std::conj(amps[j]);
    }
  }
  return DensityMatrix(dim, std::move(entries));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int n_qubits,
                            const std::vector<int>& keep) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::domain_error("n_qubits must be in [1, " +
                            std::to_string(kMaxQubits) + "]");
  }
  if (rho.dim() != (std::size_t{1} << n_qubits)) {
    throw std::domain_error("density matrix dimension does not match n_qubits");
  }
  if (keep.empty()) {
    throw std::domain_error("keep set must not be empty");
  }
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::domain_error("keep set contains duplicate qubits");
  }
  if (kept.front() < 0 || kept.back() >= n_qubits) {
    throw std::domain_error("keep set contains a qubit outside [0, " +
                            std::to_string(n_qubits - 1) + "]");
  }

  std::vector<int> traced;
  for (int q = 0; q < n_qubits; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  // Bit j of a compact index goes to full-register position positions[j].
  const auto scatter = [](std::size_t compact, const std::vector<int>& positions) {
    std::size_t full = 0;
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (compact >> j & 1) full |= std::size_t{1} << positions[j];
    }
    return full;
  };

  const std::size_t out_dim = std::size_t{1} << kept.size();
  const std::size_t traced_dim = std::size_t{1} << traced.size();
  std::vector<cdouble> out(out_dim * out_dim, cdouble{0.0, 0.0});
  for (std::size_t a = 0; a < out_dim; ++a) {
    const std::size_t row_kept = scatter(a, kept);
    for (std::size_t b = 0; b < out_dim; ++b) {
      const std::size_t col_kept = scatter(b, kept);
      cdouble sum{0.0, 0.0};
      for (std::size_t t = 0; t < traced_dim; ++t) {
        const std::size_t env = scatter(t, traced);
        sum += rho.at(row_kept | env, col_kept | env);
      }
      out[a * out_dim + b] = sum;
    }
  }
  return DensityMatrix(out_dim, std::move(out));
}

std::vector<DensityMatrix> reduced_per_qubit(const StateVector& state) {
  const DensityMatrix rho = density_from_state(state);
  std::vector<DensityMatrix> reduced;
  reduced.reserve(state.n_qubits());
  for (int q = 0; q < state.n_qubits(); ++q) {
    reduced.push_back(partial_trace(rho, state.n_qubits(), {q}));
  }
  return reduced;
}

double purity(const DensityMatrix& rho) {
  // Tr[rho^2] = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
  double sum = 0.0;
  for (const cdouble& e : rho.entries()) sum += std::norm(e);
  return sum;
}

namespace {

// Eigenvalues of a Hermitian 2x2 [[a, b], [conj(b), d]]: the usual
// half-trace +/- discriminant closed form.
std::vector<double> eigenvalues_2x2(double a, cdouble b, double d) {
  const double mid = 0.5 * (a + d);
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mid - disc, mid + disc};
}

// Cyclic Jacobi for a complex Hermitian matrix. Each rotation zeroes one
// off-diagonal pair (p, q): the pair's phase is absorbed first, then a real
// Givens rotation annihilates it. Converges quadratically once the
// off-diagonal mass is small.
std::vector<double> eigenvalues_jacobi(std::vector<cdouble> a, std::size_t n) {
  const auto at = [&](std::size_t i, std::size_t j) -> cdouble& {
    return a[i * n + j];
  };

  double scale = 0.0;
  for (const cdouble& e : a) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  const double tol = 1e-12 * scale;

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(at(i, j)));
    }
    if (off <= tol) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cdouble apq = at(p, q);
        const double r = std::abs(apq);
        if (r <= tol) continue;
        const cdouble phase = apq / r;  // e^{i phi}
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- V^H A V with V = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on
        // the (p, q) plane. Column update then row update.
        const cdouble phase_conj = std::conj(phase);
        for (std::size_t i = 0; i < n; ++i) {
          const cdouble aip = at(i, p);
          const cdouble aiq = at(i, q);
          at(i, p) = c * aip - s * phase_conj * aiq;
          at(i, q) = s * aip + c * phase_conj * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cdouble apj = at(p, j);
          const cdouble aqj = at(q, j);
          at(p, j) = c * apj - s * phase * aqj;
          at(q, j) = s * apj + c * phase * aqj;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i).real();
  return eig;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const DensityMatrix& rho) {
  std::vector<double> eig;
  if (rho.dim() == 1) {
    eig = {rho.at(0, 0).real()};
  } else if (rho.dim() == 2) {
    eig = eigenvalues_2x2(rho.at(0, 0).real(), rho.at(0, 1), rho.at(1, 1).real());
  } else {
    eig = eigenvalues_jacobi(rho.entries(), rho.dim());
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace evoqc
