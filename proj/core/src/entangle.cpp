#include "spinent/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "spinent/error.hpp"

namespace spinent {

namespace {

// sy (x) sy in the standard basis; real.
Eigen::Matrix4d flip_operator() {
  Eigen::Matrix4d s;
  s << 0, 0, 0, -1,
       0, 0, 1, 0,
       0, 1, 0, 0,
      -1, 0, 0, 0;
  return s;
}

// Eigenvalues of rho below this (relative) are round-off of a true zero.
constexpr double kRankCutoff = 8.0 * std::numeric_limits<double>::epsilon();
constexpr double kConvexitySlack = 1e-10;
constexpr double kHypothesisTolerance = 1e-10;

}  // namespace

Matrix4c spin_flip(const Matrix4c& rho) {
  const Matrix4c s = flip_operator().cast<cplx>();
  return s * rho.conjugate() * s;
}

TwoSiteDensityMatrix spin_flip(const TwoSiteDensityMatrix& rho) {
  return TwoSiteDensityMatrix(spin_flip(rho.matrix()), rho.site_i(), rho.site_j());
}

Vector4c spin_flip(const Vector4c& psi) {
  return flip_operator().cast<cplx>() * psi.conjugate();
}

double concurrence_from_roots(std::array<double, 4> roots) {
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double entanglement_of_formation(double concurrence) {
  const double c = std::clamp(concurrence, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  if (c == 1.0) return 1.0;
  const double x = 0.5 + 0.5 * std::sqrt(1.0 - c * c);
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

ConcurrenceReport concurrence(const TwoSiteDensityMatrix& rho) {
  // With rho = X X^dag and X = V sqrt(mu), sqrt(rho) rho~ sqrt(rho) = V t^dag t V^dag
  // for the complex-symmetric t = X^T S X. The roots are the singular values
  // of t, which avoids square roots of round-off sized eigenvalues.
  Eigen::SelfAdjointEigenSolver<Matrix4c> eig(rho.matrix());
  const Eigen::Vector4d mu = eig.eigenvalues();
  const double cutoff = kRankCutoff * std::max(1.0, mu.maxCoeff());
  Eigen::Vector4d sqrt_mu;
  for (int k = 0; k < 4; ++k) sqrt_mu(k) = mu(k) > cutoff ? std::sqrt(mu(k)) : 0.0;
  const Matrix4c x = eig.eigenvectors() * sqrt_mu.cast<cplx>().asDiagonal();
  const Matrix4c t = x.transpose() * flip_operator().cast<cplx>() * x;

  Eigen::JacobiSVD<Matrix4c> svd(t);
  const Eigen::Vector4d sv = svd.singularValues();

  ConcurrenceReport out;
  for (int k = 0; k < 4; ++k) out.roots[k] = sv(k);
  std::sort(out.roots.begin(), out.roots.end(), std::greater<>());
  out.concurrence = std::min(1.0, concurrence_from_roots(out.roots));
  out.eof = entanglement_of_formation(out.concurrence);
  out.ef_argument = 0.5 + 0.5 * std::sqrt(1.0 - out.concurrence * out.concurrence);
  return out;
}

double pure_state_concurrence(const Vector4c& psi) {
  return std::abs(psi.dot(spin_flip(psi)));
}

MixtureConcurrence mixture_concurrence(const Vector4c& alpha_plus, const Vector4c& alpha_minus) {
  if (std::abs(alpha_plus.norm() - 1.0) > kHypothesisTolerance ||
      std::abs(alpha_minus.norm() - 1.0) > kHypothesisTolerance) {
    throw InvalidArgument("mixture_concurrence: states must be normalized");
  }
  const cplx pp = alpha_plus.dot(spin_flip(alpha_plus));
  const cplx mm = alpha_minus.dot(spin_flip(alpha_minus));
  if (std::abs(std::abs(pp) - std::abs(mm)) > kHypothesisTolerance) {
    throw InvalidArgument("mixture_concurrence: pure-state concurrences differ (" +
                          std::to_string(std::abs(pp)) + " vs " + std::to_string(std::abs(mm)) +
                          ")");
  }
  MixtureConcurrence out;
  out.c = std::abs(pp);
  out.d = alpha_plus.dot(spin_flip(alpha_minus));
  const double dd = std::abs(out.d);
  if (std::abs(std::abs(pp * mm - out.d * out.d) - std::abs(out.c * out.c - dd * dd)) >
      kHypothesisTolerance) {
    throw InvalidArgument("mixture_concurrence: overlap phases incompatible with min{c, |d|}");
  }
  out.value = std::min(out.c, dd);
  return out;
}

ConvexityDiagnostic convexity_check(const TwoSiteDensityMatrix& rho_plus,
                                    const TwoSiteDensityMatrix& rho_minus) {
  const TwoSiteDensityMatrix mix(0.5 * (rho_plus.matrix() + rho_minus.matrix()),
                                 rho_plus.site_i(), rho_plus.site_j());
  ConvexityDiagnostic out;
  out.mixture = concurrence(mix).concurrence;
  out.average = 0.5 * (concurrence(rho_plus).concurrence + concurrence(rho_minus).concurrence);
  out.holds = out.mixture <= out.average + kConvexitySlack;
  return out;
}

}  // namespace spinent
