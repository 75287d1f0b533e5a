#include <doctest.h>

#include "oracles.hpp"
#include "spinent/entangle.hpp"
#include "spinent/error.hpp"
#include "spinent/random_states.hpp"

using namespace spinent;

namespace {

Matrix4c werner(double p) {
  Vector4c s(0, 1, -1, 0);
  s /= std::sqrt(2.0);
  return p * s * s.adjoint() + (1.0 - p) * 0.25 * Matrix4c::Identity();
}

}  // namespace

TEST_CASE("singlet, product state and I/4") {
  Vector4c s(0, 1, -1, 0);
  s /= std::sqrt(2.0);
  const auto singlet = concurrence(TwoSiteDensityMatrix(s * s.adjoint()));
  CHECK(singlet.concurrence == doctest::Approx(1.0));
  CHECK(singlet.eof == doctest::Approx(1.0));

  Vector4c up(1, 0, 0, 0);
  CHECK(concurrence(TwoSiteDensityMatrix(up * up.adjoint())).concurrence == 0.0);

  const auto mixed = concurrence(TwoSiteDensityMatrix(0.25 * Matrix4c::Identity()));
  CHECK(mixed.concurrence == 0.0);
  CHECK(mixed.eof == 0.0);
  for (double r : mixed.roots) CHECK(r == doctest::Approx(0.25));
}

TEST_CASE("Werner states: C = max(0, (3p - 1)/2)") {
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    const double c = concurrence(TwoSiteDensityMatrix(werner(p))).concurrence;
    CHECK(c == doctest::Approx(expected).epsilon(1e-12));
    CHECK(c == doctest::Approx(oracle::concurrence(werner(p))).epsilon(1e-12));
  }
}

TEST_CASE("general path agrees with the non-Hermitian eigenvalue recipe") {
  RandomStates rs(101);
  for (int t = 0; t < 300; ++t) {
    const TwoSiteDensityMatrix rho = rs.density_matrix(2 + t % 3);
    CHECK(std::abs(concurrence(rho).concurrence - oracle::concurrence(rho.matrix())) < 1e-7);
  }
}

TEST_CASE("concurrence is invariant under local unitaries") {
  RandomStates rs(7);
  for (int t = 0; t < 200; ++t) {
    const TwoSiteDensityMatrix rho = rs.density_matrix(1 + t % 4);
    const Matrix4c u = kron2(rs.su2(), rs.su2());
    const TwoSiteDensityMatrix r2(u * rho.matrix() * u.adjoint());
    CHECK(std::abs(concurrence(rho).concurrence - concurrence(r2).concurrence) < 1e-10);
  }
}

TEST_CASE("pure states reduce to |<psi|psi~>|") {
  RandomStates rs(13);
  for (int t = 0; t < 200; ++t) {
    const Vector4c psi = rs.pure_state();
    const double c = concurrence(TwoSiteDensityMatrix(psi * psi.adjoint())).concurrence;
    CHECK(std::abs(c - pure_state_concurrence(psi)) < 1e-12);
  }
}

TEST_CASE("concurrence and E_f bounds; E_f is monotone in C") {
  RandomStates rs(19);
  for (int t = 0; t < 200; ++t) {
    const auto rep = concurrence(rs.density_matrix(1 + t % 4));
    CHECK(rep.concurrence >= 0.0);
    CHECK(rep.concurrence <= 1.0);
    CHECK(rep.eof >= 0.0);
    CHECK(rep.eof <= 1.0);
    CHECK(rep.roots[0] >= rep.roots[1]);
    CHECK(rep.roots[1] >= rep.roots[2]);
    CHECK(rep.roots[2] >= rep.roots[3]);
  }
  double prev = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const double e = entanglement_of_formation(0.01 * k);
    CHECK(e >= prev);
    prev = e;
  }
  CHECK(entanglement_of_formation(0.0) == 0.0);
  CHECK(entanglement_of_formation(1.0) == 1.0);
}

TEST_CASE("spin flip of a spin flip is the identity") {
  RandomStates rs(23);
  const Matrix4c m = rs.density_matrix().matrix();
  CHECK((spin_flip(spin_flip(m)) - m).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("spin flip fixes I/4 and the singlet and keeps the trace") {
  const Matrix4c id = 0.25 * Matrix4c::Identity();
  CHECK((spin_flip(id) - id).cwiseAbs().maxCoeff() < 1e-15);
  const Matrix4c singlet = werner(1.0);
  CHECK((spin_flip(singlet) - singlet).cwiseAbs().maxCoeff() < 1e-15);
  RandomStates rs(31);
  for (int t = 0; t < 50; ++t) {
    CHECK(std::abs(spin_flip(rs.density_matrix().matrix()).trace() - cplx(1.0)) < 1e-14);
  }
}

TEST_CASE("mixture formula matches the general path") {
  RandomStates rs(29);
  for (int t = 0; t < 200; ++t) {
    const auto [p, m] = rs.equal_concurrence_pair();
    const MixtureConcurrence mix = mixture_concurrence(p, m);
    const TwoSiteDensityMatrix rho(0.5 * (p * p.adjoint() + m * m.adjoint()));
    CHECK(std::abs(mix.value - concurrence(rho).concurrence) < 1e-10);
  }
}

TEST_CASE("mixture formula hypotheses are enforced") {
  Vector4c up(1, 0, 0, 0);
  Vector4c bell(1, 0, 0, 1);
  bell /= std::sqrt(2.0);
  CHECK_THROWS_AS(mixture_concurrence(up, bell), InvalidArgument);
  CHECK_THROWS_AS(mixture_concurrence(2.0 * bell, bell), InvalidArgument);
}

TEST_CASE("convexity holds on random pairs") {
  RandomStates rs(31);
  for (int t = 0; t < 500; ++t) {
    const auto d = convexity_check(rs.density_matrix(1 + t % 4), rs.density_matrix(1 + (t / 4) % 4));
    CHECK(d.holds);
  }
}
