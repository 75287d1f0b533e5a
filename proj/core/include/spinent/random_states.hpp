#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Core>

#include "spinent/reduced.hpp"
#include "spinent/symmetry.hpp"

namespace spinent {

/// Seeded generators of random two-qubit objects for property checks.
class RandomStates {
 public:
  explicit RandomStates(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  double normal();

  Vector4c pure_state();
  Vector4c real_pure_state();

  /// rho = G G^dag / Tr, G a 4 x rank complex Ginibre matrix.
  TwoSiteDensityMatrix density_matrix(int rank = 4);

  /// Haar-random SU(2).
  Eigen::Matrix2cd su2();
  /// exp(-i theta sy), a real rotation.
  Eigen::Matrix2cd real_rotation();

  Z2Form z2_form();
  U1BrokenForm u1_form();
  /// `breaking` scales the a, b entries.
  IsingForm ising_form(double breaking = 0.1);

  /// Two real states with equal pure-state concurrence: a+ random, a- =
  /// (R1 (x) R2) a+ with real rotations, optionally followed by sx (x) sx.
  std::pair<Vector4c, Vector4c> equal_concurrence_pair();

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Kronecker product of single-qubit operators, first factor on site i.
Matrix4c kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace spinent
