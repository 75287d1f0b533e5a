#pragma once

// Independent reference implementations used only by the tests: dense
// Kronecker-product Hamiltonians, operator-string expectation values and the
// textbook non-Hermitian Wootters recipe.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Eigen::Matrix2cd pauli(char axis) {
  Eigen::Matrix2cd m;
  const cplx i(0, 1);
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -i, i, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1;
  }
  return m;
}

// Operator on site `site` of an n-site chain, site 0 as the least significant bit.
inline Mat site_op(int n, int site, char axis) {
  Mat out = Mat::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) {
    const Eigen::Matrix2cd f = k == site ? pauli(axis) : pauli('i');
    Mat next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
    out = next;
  }
  return out;
}

inline std::vector<std::pair<int, int>> ring_bonds(int n, bool periodic) {
  std::vector<std::pair<int, int>> b;
  for (int i = 0; i + 1 < n; ++i) b.emplace_back(i, i + 1);
  if (periodic && n > 2) b.emplace_back(n - 1, 0);
  return b;
}

inline Mat xxz(int n, bool periodic, double delta, double h) {
  const int dim = 1 << n;
  Mat H = Mat::Zero(dim, dim);
  for (auto [i, j] : ring_bonds(n, periodic)) {
    H -= site_op(n, i, 'x') * site_op(n, j, 'x') + site_op(n, i, 'y') * site_op(n, j, 'y');
    H += delta * site_op(n, i, 'z') * site_op(n, j, 'z');
  }
  for (int i = 0; i < n; ++i) H += h * (i % 2 ? -1.0 : 1.0) * site_op(n, i, 'z');
  return H;
}

inline Mat tfim(int n, bool periodic, double hz, double hx) {
  const int dim = 1 << n;
  Mat H = Mat::Zero(dim, dim);
  for (auto [i, j] : ring_bonds(n, periodic)) H -= site_op(n, i, 'x') * site_op(n, j, 'x');
  for (int i = 0; i < n; ++i) H += hz * site_op(n, i, 'z') + hx * site_op(n, i, 'x');
  return H;
}

// <psi| s^a_i s^b_j |psi>
inline double correlator(const Eigen::VectorXcd& psi, int n, int i, char a, int j, char b) {
  Mat op = Mat::Identity(1 << n, 1 << n);
  if (a != 'i') op = op * site_op(n, i, a);
  if (b != 'i') op = op * site_op(n, j, b);
  return psi.dot(op * psi).real();
}

inline Eigen::Matrix4cd flip(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd yy;
  const Eigen::Matrix2cd y = pauli('y');
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) yy.block<2, 2>(2 * r, 2 * c) = y(r, c) * y;
  return yy * rho.conjugate() * yy;
}

// Wootters through the eigenvalues of the non-Hermitian rho rho~.
inline double concurrence(const Eigen::Matrix4cd& rho) {
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(rho * flip(rho));
  std::array<double, 4> r{};
  for (int k = 0; k < 4; ++k) r[k] = std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
  std::sort(r.begin(), r.end(), std::greater<>());
  return std::max(0.0, r[0] - r[1] - r[2] - r[3]);
}

}  // namespace oracle
