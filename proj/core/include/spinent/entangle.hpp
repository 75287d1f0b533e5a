#pragma once

#include <array>

#include "spinent/reduced.hpp"

namespace spinent {

/// (sy (x) sy) conj(rho) (sy (x) sy), conjugation in the standard basis.
Matrix4c spin_flip(const Matrix4c& rho);
TwoSiteDensityMatrix spin_flip(const TwoSiteDensityMatrix& rho);

/// sy (x) sy conj(psi) for a two-qubit pure state.
Vector4c spin_flip(const Vector4c& psi);

struct ConcurrenceReport {
  /// Square roots of the eigenvalues of rho rho~, descending.
  std::array<double, 4> roots{};
  double concurrence = 0.0;
  double eof = 0.0;
  /// x = 1/2 + sqrt(1 - C^2)/2
  double ef_argument = 1.0;
};

/// Wootters concurrence. The roots are the singular values of X^T S X with
/// rho = X X^dag taken from the eigendecomposition of rho, so their squares
/// are the eigenvalues of the Hermitian sqrt(rho) rho~ sqrt(rho).
ConcurrenceReport concurrence(const TwoSiteDensityMatrix& rho);

/// C = max(0, r1 - r2 - r3 - r4) for roots in any order.
double concurrence_from_roots(std::array<double, 4> roots);

/// E_f(C) = h(x), x = 1/2 + sqrt(1 - C^2)/2, h the binary entropy in bits.
/// Exact 0 and 1 at the end points.
double entanglement_of_formation(double concurrence);

/// |<psi|psi~>| for a normalized two-qubit state.
double pure_state_concurrence(const Vector4c& psi);

struct MixtureConcurrence {
  double c = 0.0;   ///< |<a+|a+~>|
  cplx d;           ///< <a+|a-~>
  double value = 0.0;
};

/// Concurrence of (|a+><a+| + |a-><a-|)/2 as min{c, |d|}.
///
/// The closed form needs both states normalized with equal pure-state
/// concurrence, and requires the 2x2 overlap matrix of the pair to have
/// singular values (c +/- |d|), i.e. |<a+|a+~><a-|a-~> - d^2| = |c^2 - |d|^2|.
/// Pairs related by a real local rotation or by a global spin flip satisfy
/// this. Violations throw InvalidArgument.
MixtureConcurrence mixture_concurrence(const Vector4c& alpha_plus, const Vector4c& alpha_minus);

struct ConvexityDiagnostic {
  double mixture = 0.0;  ///< C((rho+ + rho-)/2)
  double average = 0.0;  ///< (C(rho+) + C(rho-))/2
  bool holds = true;     ///< mixture <= average + 1e-10
};

ConvexityDiagnostic convexity_check(const TwoSiteDensityMatrix& rho_plus,
                                    const TwoSiteDensityMatrix& rho_minus);

}  // namespace spinent
