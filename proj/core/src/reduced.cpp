#include "spinent/reduced.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spinent/error.hpp"

namespace spinent {

namespace {

Matrix4c kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

void check_pair(int num_sites, int i, int j) {
  if (i == j) throw InvalidArgument("reduce: sites must differ");
  if (i < 0 || j < 0 || i >= num_sites || j >= num_sites) {
    throw InvalidArgument("reduce: site index out of range");
  }
}

// Adds |psi><psi| traced down to (i, j), scaled by weight.
template <class Amplitude>
void accumulate(Matrix4c& rho, const Amplitude& psi, int num_sites, int i, int j, double weight) {
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  const std::uint64_t dim = std::uint64_t{1} << num_sites;
  const std::uint64_t offsets[4] = {0, bj, bi, bi | bj};
  Matrix4c acc = Matrix4c::Zero();
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & (bi | bj)) continue;
    Vector4c a;
    for (int k = 0; k < 4; ++k) a(k) = psi(static_cast<Eigen::Index>(base | offsets[k]));
    acc.noalias() += a * a.adjoint();
  }
  rho += weight * acc;
}

}  // namespace

Eigen::Matrix2cd pauli_matrix(int axis) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (axis) {
    case CorrelatorSet::I: m << 1, 0, 0, 1; break;
    case CorrelatorSet::X: m << 0, 1, 1, 0; break;
    case CorrelatorSet::Y: m << 0, -i, i, 0; break;
    case CorrelatorSet::Z: m << 1, 0, 0, -1; break;
    default: throw InvalidArgument("pauli_matrix: axis must be 0..3");
  }
  return m;
}

TwoSiteDensityMatrix::TwoSiteDensityMatrix(const Matrix4c& entries, int site_i, int site_j)
    : site_i_(site_i), site_j_(site_j) {
  if (!entries.allFinite()) throw NumericalError("density matrix: non-finite entries");
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    throw NumericalError("density matrix: not Hermitian (max |rho - rho^dag| = " +
                         std::to_string(asym) + ")");
  }
  rho_ = 0.5 * (entries + entries.adjoint());
  const double trace = rho_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw NumericalError("density matrix: trace " + std::to_string(trace) + " differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> eig(rho_, Eigen::EigenvaluesOnly);
  eigenvalues_ = eig.eigenvalues();
  if (eigenvalues_(0) < -kNegativeTolerance) {
    throw NumericalError("density matrix: negative eigenvalue " + std::to_string(eigenvalues_(0)));
  }
  eigenvalues_ = eigenvalues_.cwiseMax(0.0);
}

CorrelatorSet CorrelatorSet::from_values(double xx, double yy, double zz, double zi, double zj,
                                         double xi, double xj) {
  CorrelatorSet c;
  c.pauli[I][I] = 1.0;
  c.pauli[X][X] = xx;
  c.pauli[Y][Y] = yy;
  c.pauli[Z][Z] = zz;
  c.pauli[Z][I] = zi;
  c.pauli[I][Z] = zj;
  c.pauli[X][I] = xi;
  c.pauli[I][X] = xj;
  return c;
}

TwoSiteDensityMatrix reduce_pure(const StateVector& psi, int num_sites, int i, int j) {
  check_pair(num_sites, i, j);
  if (psi.size() != static_cast<Eigen::Index>(std::uint64_t{1} << num_sites)) {
    throw InvalidArgument("reduce_pure: state dimension does not match 2^N");
  }
  Matrix4c rho = Matrix4c::Zero();
  accumulate(rho, psi, num_sites, i, j, 1.0);
  return TwoSiteDensityMatrix(rho, i, j);
}

TwoSiteDensityMatrix reduce_thermal(const ThermalEnsemble& ensemble, int i, int j) {
  const int n = ensemble.num_sites();
  check_pair(n, i, j);
  Matrix4c rho = Matrix4c::Zero();
  const auto& vectors = ensemble.spectrum().vectors;
  for (Eigen::Index k : ensemble.significant_states()) {
    accumulate(rho, vectors.col(k), n, i, j, ensemble.weights()(k));
  }
  return TwoSiteDensityMatrix(rho, i, j);
}

CorrelatorSet correlators_from_rho(const TwoSiteDensityMatrix& rho) {
  CorrelatorSet c;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      c.pauli[a][b] = (rho.matrix() * kron(pauli_matrix(a), pauli_matrix(b))).trace().real();
    }
  }
  return c;
}

Matrix4c rho_from_correlators(const CorrelatorSet& corr) {
  Matrix4c rho = Matrix4c::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) rho += corr.pauli[a][b] * kron(pauli_matrix(a), pauli_matrix(b));
  return 0.25 * rho;
}

Matrix4c parse_density_matrix(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw InvalidArgument("density matrix file: line " + std::to_string(line_no) +
                              ": cannot parse '" + token + "' as a number");
      }
      values.push_back(v);
    }
  }
  if (values.size() != 32) {
    throw InvalidArgument("density matrix file: expected 16 complex entries (32 numbers), got " +
                          std::to_string(values.size()) + " numbers");
  }
  Matrix4c m;
  for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = cplx(values[2 * k], values[2 * k + 1]);
  return m;
}

TwoSiteDensityMatrix read_density_matrix(std::istream& in) {
  return TwoSiteDensityMatrix(parse_density_matrix(in));
}

void write_density_matrix(std::ostream& out, const TwoSiteDensityMatrix& rho) {
  const auto old_precision = out.precision(17);
  out << "# two-site density matrix, sites " << rho.site_i() << " " << rho.site_j()
      << "; basis uu ud du dd; row-major re im pairs\n";
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      out << rho(r, c).real() << ' ' << rho(r, c).imag() << (c == 3 ? '\n' : ' ');
    }
  }
  out.precision(old_precision);
}

}  // namespace spinent
