#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "spinent/model.hpp"

namespace spinent {

struct LanczosOptions {
  /// Total number of H applications before giving up.
  int max_iterations = 5000;
  /// Krylov vectors held in memory before a thick restart.
  int max_basis = 64;
  /// Lowest Ritz vectors carried across a restart.
  int keep = 4;
  /// Acceptance threshold on ||H psi - E psi||.
  double tolerance = 1e-10;
  /// Residual required of the second Ritz pair before the gap is reported.
  double gap_tolerance = 1e-6;
  /// Gaps below this flag a cat-state (near-degenerate) ground space.
  double degeneracy_tolerance = 1e-8;
  /// Seeds the per-index perturbation of the start vector.
  std::uint64_t seed = 20031;
  /// Solve each Z2 sector separately when H has an unbroken Z2 symmetry, so
  /// the returned state is the symmetric finite-size ground state even when
  /// its partner is exponentially close.
  bool resolve_symmetry = true;
};

struct SolverReport {
  double ground_energy = 0.0;
  /// E1 - E0 (estimate from the second Ritz value or the other Z2 sector).
  double gap = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool near_degenerate = false;
  /// +1 / -1 for the Z2 sector holding the ground state, 0 if unresolved.
  int sector = 0;
  /// Lowest Ritz value after every iteration of the sector that won.
  std::vector<double> energy_history;
};

struct GroundState {
  StateVector state;
  SolverReport report;
};

/// Deterministic start vector: 1 + 0.25 u_s with u_s in [-1, 1) drawn from a
/// seeded 64-bit Mersenne twister, then normalized.
StateVector start_vector(std::uint64_t dimension, std::uint64_t seed);

/// Lowest eigenpair by thick-restart Lanczos with full reorthogonalization.
/// Throws ConvergenceError if the residual does not fall below the tolerance
/// within max_iterations.
GroundState lanczos_ground_state(const HamiltonianAction& h, const LanczosOptions& opts = {});

/// Dense path limit: dimension 2^12.
inline constexpr int kDenseMaxSites = 12;

/// Full spectrum; energies ascending, eigenvectors as columns. Both supported
/// Hamiltonians are real symmetric, so the vectors are stored real.
struct DenseSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
  int num_sites = 0;
};

/// Realizes H column by column from apply() and diagonalizes it (LAPACK dsyevd).
DenseSpectrum dense_spectrum(const HamiltonianAction& h);

/// Gibbs state exp(-beta H)/Z over a dense spectrum.
class ThermalEnsemble {
 public:
  ThermalEnsemble(DenseSpectrum spectrum, double beta);

  double beta() const noexcept { return beta_; }
  int num_sites() const noexcept { return spectrum_.num_sites; }
  const DenseSpectrum& spectrum() const noexcept { return spectrum_; }

  /// w_k = exp(-beta (E_k - E_0)) / Z, summing to one.
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

  /// Eigenstates whose weight exceeds `cutoff` (relative to the largest).
  std::vector<Eigen::Index> significant_states(double cutoff = 1e-18) const;

  /// Eigenvector k as a complex state.
  StateVector state(Eigen::Index k) const;

 private:
  DenseSpectrum spectrum_;
  double beta_;
  Eigen::VectorXd weights_;
};

using OperatorAction = std::function<StateVector(const StateVector&)>;

/// Tr(exp(-beta H) O) / Z
cplx gibbs_expectation(const ThermalEnsemble& ensemble, const OperatorAction& op);

}  // namespace spinent
