#include "spinent/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <lapacke.h>

#include "spinent/error.hpp"

namespace spinent {

namespace {

struct SectorResult {
  StateVector state;
  double e0 = 0.0;
  double e1 = std::numeric_limits<double>::infinity();
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> history;
};

// Projects onto the +/- eigenspace of a Z2 operation: (v +/- U v) / 2.
class SectorProjector {
 public:
  SectorProjector(std::optional<Z2Symmetry> sym, int sign) : sym_(sym), sign_(sign) {}

  void operator()(StateVector& v) const {
    if (!sym_) return;
    const StateVector u = sym_->apply(v);
    v = 0.5 * (v + static_cast<double>(sign_) * u);
  }

 private:
  std::optional<Z2Symmetry> sym_;
  int sign_;
};

SectorResult lanczos_sector(const HamiltonianAction& h, const LanczosOptions& opts,
                            const SectorProjector& project) {
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  const Eigen::Index max_basis = std::max<Eigen::Index>(
      2, std::min<Eigen::Index>(opts.max_basis, dim));
  const Eigen::Index keep = std::clamp<Eigen::Index>(opts.keep, 1, max_basis - 1);

  StateVector v0 = start_vector(h.dimension(), opts.seed);
  project(v0);
  const double n0 = v0.norm();
  if (n0 < 1e-12) throw NumericalError("lanczos: start vector has no weight in the sector");

  Eigen::MatrixXcd basis(dim, max_basis);
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(max_basis, max_basis);
  basis.col(0) = v0 / n0;
  Eigen::Index size = 1;

  SectorResult result;
  StateVector w(dim);
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ritz;

  auto finalize = [&](const Eigen::VectorXcd& coeffs, double theta) -> bool {
    StateVector psi = basis.leftCols(size) * coeffs;
    project(psi);
    psi /= psi.norm();
    const StateVector hpsi = h.apply(psi);
    ++result.iterations;
    const double e = psi.dot(hpsi).real();
    const double res = (hpsi - e * psi).norm();
    best_residual = std::min(best_residual, res);
    if (res >= opts.tolerance) return false;
    result.state = std::move(psi);
    result.e0 = std::min(e, theta);
    result.residual = res;
    return true;
  };

  while (true) {
    const Eigen::Index last = size - 1;
    w = h.apply(basis.col(last));
    project(w);
    ++result.iterations;

    // Two passes of classical Gram-Schmidt against the whole basis.
    Eigen::VectorXcd coeff = basis.leftCols(size).adjoint() * w;
    w.noalias() -= basis.leftCols(size) * coeff;
    const Eigen::VectorXcd again = basis.leftCols(size).adjoint() * w;
    w.noalias() -= basis.leftCols(size) * again;
    coeff += again;

    proj.col(last).head(size) = coeff;
    proj.row(last).head(size) = coeff.adjoint();
    proj(last, last) = coeff(last).real();
    const double beta = w.norm();

    ritz.compute(proj.topLeftCorner(size, size));
    const Eigen::VectorXd& theta = ritz.eigenvalues();
    const Eigen::MatrixXcd& s = ritz.eigenvectors();
    result.history.push_back(theta(0));

    const double res0 = beta * std::abs(s(last, 0));
    const double res1 = size > 1 ? beta * std::abs(s(last, 1)) : 0.0;
    const bool exhausted = beta < 1e-13 * std::max(1.0, std::abs(theta(0)));

    if (exhausted || (res0 < opts.tolerance && res1 < opts.gap_tolerance)) {
      if (size > 1) result.e1 = theta(1);
      if (finalize(s.col(0), theta(0))) return result;
      if (exhausted) {
        throw ConvergenceError("lanczos: Krylov space exhausted above tolerance", best_residual,
                               result.iterations);
      }
    }
    best_residual = std::min(best_residual, res0);

    if (result.iterations >= opts.max_iterations) {
      throw ConvergenceError("lanczos: no convergence after " +
                                 std::to_string(result.iterations) + " iterations (residual " +
                                 std::to_string(best_residual) + ")",
                             best_residual, result.iterations);
    }

    if (size < max_basis) {
      basis.col(size) = w / beta;
      ++size;
      continue;
    }

    // Thick restart: keep the lowest Ritz vectors, append the residual direction.
    const Eigen::MatrixXcd ritz_vectors = basis * s.leftCols(keep);
    basis.leftCols(keep) = ritz_vectors;
    basis.col(keep) = w / beta;
    proj.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) {
      proj(i, i) = theta(i);
      proj(keep, i) = beta * s(last, i);
      proj(i, keep) = std::conj(proj(keep, i));
    }
    size = keep + 1;
  }
}

}  // namespace

StateVector start_vector(std::uint64_t dimension, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StateVector v(static_cast<Eigen::Index>(dimension));
  for (std::uint64_t s = 0; s < dimension; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    v(static_cast<Eigen::Index>(s)) = 1.0 + 0.25 * (2.0 * u - 1.0);
  }
  v.normalize();
  return v;
}

GroundState lanczos_ground_state(const HamiltonianAction& h, const LanczosOptions& opts) {
  if (h.dimension() < 2) throw InvalidArgument("lanczos: dimension must be >= 2");
  if (opts.tolerance <= 0.0 || opts.max_iterations < 1) {
    throw InvalidArgument("lanczos: tolerance and max_iterations must be positive");
  }

  GroundState out;
  const auto sym = opts.resolve_symmetry ? h.symmetry() : std::nullopt;
  if (!sym) {
    SectorResult r = lanczos_sector(h, opts, SectorProjector(std::nullopt, 0));
    out.state = std::move(r.state);
    out.report.ground_energy = r.e0;
    out.report.gap = std::isfinite(r.e1) ? std::max(0.0, r.e1 - r.e0) : 0.0;
    out.report.iterations = r.iterations;
    out.report.residual = r.residual;
    out.report.energy_history = std::move(r.history);
  } else {
    SectorResult even = lanczos_sector(h, opts, SectorProjector(sym, +1));
    SectorResult odd = lanczos_sector(h, opts, SectorProjector(sym, -1));
    const bool even_wins = even.e0 <= odd.e0;
    SectorResult& win = even_wins ? even : odd;
    const SectorResult& lose = even_wins ? odd : even;
    const double e1 = std::min(win.e1, lose.e0);
    out.state = std::move(win.state);
    out.report.ground_energy = win.e0;
    out.report.gap = std::max(0.0, e1 - win.e0);
    out.report.iterations = even.iterations + odd.iterations;
    out.report.residual = win.residual;
    out.report.sector = even_wins ? +1 : -1;
    out.report.energy_history = std::move(win.history);
  }
  out.report.near_degenerate = out.report.gap < opts.degeneracy_tolerance;
  return out;
}

namespace {

using SparseReal = Eigen::SparseMatrix<double>;

// Eigenpair residuals plus a random probe of V V^T = I; O(nnz * dim + dim^2).
bool spectrum_is_sound(const SparseReal& a, const Eigen::VectorXd& energies,
                       const Eigen::MatrixXd& vectors) {
  double scale = 1.0;
  for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
    double sum = 0.0;
    for (SparseReal::InnerIterator it(a, c); it; ++it) sum += std::abs(it.value());
    scale = std::max(scale, sum);
  }
  const double tol = 1e3 * std::numeric_limits<double>::epsilon() *
                     std::sqrt(static_cast<double>(a.rows())) * scale;
  for (Eigen::Index k = 1; k < energies.size(); ++k) {
    if (!(energies(k) >= energies(k - 1))) return false;
  }
  const Eigen::MatrixXd residual = a * vectors - vectors * energies.asDiagonal();
  if (!(residual.colwise().norm().maxCoeff() <= tol)) return false;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(a.rows());
  for (auto& x : z) x = normal(rng);
  z.normalize();
  const Eigen::VectorXd back = vectors * (vectors.transpose() * z);
  return (back - z).norm() <= tol / scale;
}

// Some OpenBLAS kernel builds return garbage for larger matrices without
// reporting an error, so a failed check falls back to Eigen.
void diagonalize_block(const SparseReal& block, Eigen::VectorXd& energies,
                       Eigen::MatrixXd& vectors) {
  const Eigen::MatrixXd dense(block);
  const auto n = dense.rows();
  energies.resize(n);
  vectors = dense;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n), vectors.data(),
                     static_cast<lapack_int>(n), energies.data());
  if (info == 0 && spectrum_is_sound(block, energies, vectors)) return;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success) {
    throw NumericalError("dense_spectrum: eigendecomposition failed (dsyevd info = " +
                         std::to_string(info) + ")");
  }
  energies = es.eigenvalues();
  vectors = es.eigenvectors();
}

// Connected components of the nonzero pattern, each listed in ascending order.
std::vector<std::vector<Eigen::Index>> blocks_of(const SparseReal& a) {
  const auto dim = a.rows();
  std::vector<Eigen::Index> label(static_cast<std::size_t>(dim), -1);
  std::vector<std::vector<Eigen::Index>> out;
  for (Eigen::Index seed = 0; seed < dim; ++seed) {
    if (label[seed] >= 0) continue;
    const auto id = static_cast<Eigen::Index>(out.size());
    std::vector<Eigen::Index> members{seed};
    label[seed] = id;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (SparseReal::InnerIterator it(a, members[head]); it; ++it) {
        if (label[it.row()] < 0) {
          label[it.row()] = id;
          members.push_back(it.row());
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

DenseSpectrum dense_spectrum(const HamiltonianAction& h) {
  if (h.num_sites() > kDenseMaxSites) {
    throw InvalidArgument("dense_spectrum: N = " + std::to_string(h.num_sites()) +
                          " exceeds the dense limit of " + std::to_string(kDenseMaxSites) +
                          " sites; use lanczos_ground_state instead");
  }
  const auto dim = static_cast<Eigen::Index>(h.dimension());
  std::vector<Eigen::Triplet<double>> entries;
  StateVector e = StateVector::Zero(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    e(c) = 1.0;
    const StateVector col = h.apply(e);
    e(c) = 0.0;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (col(r).imag() != 0.0) {
        throw NumericalError("dense_spectrum: Hamiltonian has complex matrix elements");
      }
      if (col(r).real() != 0.0) entries.emplace_back(r, c, col(r).real());
    }
  }
  SparseReal matrix(dim, dim);
  matrix.setFromTriplets(entries.begin(), entries.end());

  // Diagonalize each decoupled block, then merge in ascending energy.
  std::vector<double> energies;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> owner;  // (block, column)
  const auto blocks = blocks_of(matrix);
  std::vector<Eigen::MatrixXd> block_vectors(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& idx = blocks[b];
    const auto n = static_cast<Eigen::Index>(idx.size());
    std::vector<Eigen::Index> local(static_cast<std::size_t>(dim), -1);
    for (Eigen::Index k = 0; k < n; ++k) local[idx[k]] = k;
    std::vector<Eigen::Triplet<double>> sub;
    for (Eigen::Index k = 0; k < n; ++k) {
      for (SparseReal::InnerIterator it(matrix, idx[k]); it; ++it) {
        sub.emplace_back(local[it.row()], k, it.value());
      }
    }
    SparseReal block(n, n);
    block.setFromTriplets(sub.begin(), sub.end());
    Eigen::VectorXd w;
    diagonalize_block(block, w, block_vectors[b]);
    for (Eigen::Index k = 0; k < n; ++k) {
      energies.push_back(w(k));
      owner.emplace_back(static_cast<Eigen::Index>(b), k);
    }
  }
  std::vector<Eigen::Index> order(energies.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<Eigen::Index>(k);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return energies[x] < energies[y]; });

  DenseSpectrum out;
  out.num_sites = h.num_sites();
  out.energies.resize(dim);
  out.vectors = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto [b, col] = owner[order[k]];
    out.energies(k) = energies[order[k]];
    const auto& idx = blocks[b];
    for (std::size_t m = 0; m < idx.size(); ++m) {
      out.vectors(idx[m], k) = block_vectors[b](static_cast<Eigen::Index>(m), col);
    }
  }
  return out;
}

ThermalEnsemble::ThermalEnsemble(DenseSpectrum spectrum, double beta)
    : spectrum_(std::move(spectrum)), beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("thermal ensemble: beta must be positive and finite");
  }
  const Eigen::VectorXd& e = spectrum_.energies;
  if (e.size() == 0) throw InvalidArgument("thermal ensemble: empty spectrum");
  weights_ = (-beta_ * (e.array() - e(0))).exp().matrix();
  weights_ /= weights_.sum();
}

std::vector<Eigen::Index> ThermalEnsemble::significant_states(double cutoff) const {
  std::vector<Eigen::Index> out;
  const double top = weights_.maxCoeff();
  for (Eigen::Index k = 0; k < weights_.size(); ++k) {
    if (weights_(k) > cutoff * top) out.push_back(k);
  }
  return out;
}

StateVector ThermalEnsemble::state(Eigen::Index k) const {
  return spectrum_.vectors.col(k).cast<cplx>();
}

cplx gibbs_expectation(const ThermalEnsemble& ensemble, const OperatorAction& op) {
  cplx acc = 0.0;
  for (Eigen::Index k : ensemble.significant_states()) {
    const StateVector v = ensemble.state(k);
    acc += ensemble.weights()(k) * v.dot(op(v));
  }
  return acc;
}

}  // namespace spinent
