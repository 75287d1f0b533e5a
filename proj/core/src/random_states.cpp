#include "spinent/random_states.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace spinent {

namespace {

bool is_psd(const Matrix4c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= 1e-9;
}

}  // namespace

Matrix4c kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

double RandomStates::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double RandomStates::normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

Vector4c RandomStates::pure_state() {
  Vector4c v;
  for (int k = 0; k < 4; ++k) v(k) = cplx(normal(), normal());
  return v.normalized();
}

Vector4c RandomStates::real_pure_state() {
  Vector4c v;
  for (int k = 0; k < 4; ++k) v(k) = normal();
  return v.normalized();
}

TwoSiteDensityMatrix RandomStates::density_matrix(int rank) {
  Eigen::MatrixXcd g(4, rank);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < rank; ++c) g(r, c) = cplx(normal(), normal());
  Matrix4c rho = g * g.adjoint();
  rho /= rho.trace().real();
  return TwoSiteDensityMatrix(rho);
}

Eigen::Matrix2cd RandomStates::su2() {
  Eigen::Vector4d q;
  for (int k = 0; k < 4; ++k) q(k) = normal();
  q.normalize();
  Eigen::Matrix2cd u;
  u << cplx(q(0), q(1)), cplx(q(2), q(3)), cplx(-q(2), q(3)), cplx(q(0), -q(1));
  return u;
}

Eigen::Matrix2cd RandomStates::real_rotation() {
  const double t = uniform(0.0, 2.0 * std::numbers::pi);
  Eigen::Matrix2cd r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

Z2Form RandomStates::z2_form() {
  Z2Form f;
  std::exponential_distribution<double> expo(1.0);
  double w[4];
  double sum = 0.0;
  for (double& x : w) sum += (x = expo(rng_));
  f.A = w[0] / sum;
  f.B = w[1] / sum;
  f.G = w[2] / sum;
  f.D = w[3] / sum;
  const double lim = std::sqrt(f.B * f.G);
  f.C_off = uniform(-lim, lim);
  return f;
}

U1BrokenForm RandomStates::u1_form() {
  while (true) {
    U1BrokenForm f;
    f.A = uniform(0.0, 0.5);
    f.B = 0.5 - f.A;
    f.C_off = uniform(-f.B, f.B);
    f.f = uniform(-f.A, f.A);
    f.a = uniform(-0.25, 0.25);
    if (is_psd(f.matrix())) return f;
  }
}

IsingForm RandomStates::ising_form(double breaking) {
  while (true) {
    IsingForm f;
    f.A = uniform(0.0, 1.0);
    f.B = uniform(0.0, 1.0);
    f.D = uniform(0.0, 1.0);
    const double s = f.A + 2.0 * f.B + f.D;
    f.A /= s;
    f.B /= s;
    f.D /= s;
    f.C_off = uniform(-f.B, f.B);
    const double lim = std::sqrt(f.A * f.D);
    f.F = uniform(-lim, lim);
    f.a = breaking * normal();
    f.b = breaking * normal();
    if (is_psd(f.matrix())) return f;
  }
}

std::pair<Vector4c, Vector4c> RandomStates::equal_concurrence_pair() {
  const Vector4c plus = real_pure_state();
  Vector4c minus = kron2(real_rotation(), real_rotation()) * plus;
  if (uniform(0.0, 1.0) < 0.5) {
    Eigen::Matrix2cd sx;
    sx << 0, 1, 1, 0;
    minus = kron2(sx, sx) * minus;
  }
  return {plus, minus.normalized()};
}

}  // namespace spinent
