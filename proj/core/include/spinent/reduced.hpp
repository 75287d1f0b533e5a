#pragma once

#include <array>
#include <iosfwd>

#include <Eigen/Core>

#include "spinent/model.hpp"
#include "spinent/solver.hpp"

namespace spinent {

using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

/// Two-spin reduced density matrix in the basis {uu, ud, du, dd}, where the
/// first label is site i. Row index = 2 * bit_i + bit_j with a clear bit = up.
class TwoSiteDensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kNegativeTolerance = 1e-12;

  /// Hermitizes (rho + rho^dag)/2 after checking the asymmetry is below
  /// kHermitianTolerance, then checks trace and positivity. Throws
  /// NumericalError on failure.
  explicit TwoSiteDensityMatrix(const Matrix4c& entries, int site_i = 0, int site_j = 1);

  const Matrix4c& matrix() const noexcept { return rho_; }
  int site_i() const noexcept { return site_i_; }
  int site_j() const noexcept { return site_j_; }

  /// Eigenvalues in ascending order, tiny negatives clipped to zero.
  const Eigen::Vector4d& eigenvalues() const noexcept { return eigenvalues_; }

  cplx operator()(int r, int c) const { return rho_(r, c); }

 private:
  Matrix4c rho_;
  Eigen::Vector4d eigenvalues_;
  int site_i_;
  int site_j_;
};

/// Tr(rho sigma^a_i sigma^b_j) for a, b in {1, x, y, z}.
///
/// pauli[0][0] = 1; single-site values sit in row/column 0.
struct CorrelatorSet {
  enum Axis { I = 0, X = 1, Y = 2, Z = 3 };
  std::array<std::array<double, 4>, 4> pauli{};

  double xx() const { return pauli[X][X]; }
  double yy() const { return pauli[Y][Y]; }
  double zz() const { return pauli[Z][Z]; }
  double zi() const { return pauli[Z][I]; }
  double zj() const { return pauli[I][Z]; }
  double xi() const { return pauli[X][I]; }
  double xj() const { return pauli[I][X]; }
  /// <sx_i sx_j - sy_i sy_j>
  double xy_asym() const { return xx() - yy(); }
  /// <sx_i sz_j>, <sz_i sx_j>: the mixed entries behind the b-type elements.
  double xz() const { return pauli[X][Z]; }
  double zx() const { return pauli[Z][X]; }

  /// A set with the listed values and everything else zero.
  static CorrelatorSet from_values(double xx, double yy, double zz, double zi = 0.0,
                                   double zj = 0.0, double xi = 0.0, double xj = 0.0);
};

/// Partial trace of |psi><psi| onto sites (i, j).
TwoSiteDensityMatrix reduce_pure(const StateVector& psi, int num_sites, int i, int j);

/// Gibbs-weighted sum of the eigenstate reductions.
TwoSiteDensityMatrix reduce_thermal(const ThermalEnsemble& ensemble, int i, int j);

CorrelatorSet correlators_from_rho(const TwoSiteDensityMatrix& rho);

/// rho = 1/4 sum_ab pauli[a][b] sigma^a (x) sigma^b
Matrix4c rho_from_correlators(const CorrelatorSet& corr);

/// The 2x2 Pauli matrix for an axis.
Eigen::Matrix2cd pauli_matrix(int axis);

/// Exchange format: 16 "re im" pairs, row-major, whitespace separated.
/// Lines starting with '#' are comments. parse_density_matrix only checks the
/// format (InvalidArgument); read_density_matrix also validates the matrix.
Matrix4c parse_density_matrix(std::istream& in);
TwoSiteDensityMatrix read_density_matrix(std::istream& in);
void write_density_matrix(std::ostream& out, const TwoSiteDensityMatrix& rho);

}  // namespace spinent
