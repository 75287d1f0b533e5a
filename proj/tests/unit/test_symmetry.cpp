#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "spinent/entangle.hpp"
#include "spinent/error.hpp"
#include "spinent/random_states.hpp"
#include "spinent/sweep.hpp"
#include "spinent/symmetry.hpp"

using namespace spinent;

namespace {

TwoSiteDensityMatrix nn_ground(const ModelSpec& spec) {
  return solve_point(spec, {1}, 0.0).pairs[0];
}

LatticeSpec ring(int n) { return LatticeSpec(n, Boundary::periodic); }

}  // namespace

TEST_CASE("classification of ED matrices") {
  const auto xxz = classify_form(nn_ground(ModelSpec::xxz(ring(8), 1.5)));
  CHECK(xxz.kind == FormKind::z2);
  CHECK(xxz.residual < 1e-10);
  const auto tfim = classify_form(nn_ground(ModelSpec::tfim(ring(8), 0.6, 1e-3)));
  CHECK(tfim.kind == FormKind::ising);
  CHECK(classify_form(TwoSiteDensityMatrix(0.25 * Matrix4c::Identity())).kind == FormKind::z2);
  RandomStates rs(1);
  CHECK(classify_form(rs.density_matrix()).kind == FormKind::general);
}

TEST_CASE("Z2 correlator formula: worked values") {
  CHECK(concurrence_z2(CorrelatorSet::from_values(0, 0, -1)) == 0.0);
  CHECK(concurrence_z2(CorrelatorSet::from_values(-1, -1, -1)) == doctest::Approx(1.0));
  // Heisenberg-chain correlators in the thermodynamic limit.
  const double g = (1.0 - 4.0 * std::numbers::ln2) / 3.0;
  CHECK(concurrence_z2(CorrelatorSet::from_values(g, g, g)) == doctest::Approx(0.386).epsilon(1e-3));
  CHECK_THROWS_AS(concurrence_z2(CorrelatorSet::from_values(0, 0, 0, 0.9, 0.9)), NumericalError);
}

TEST_CASE("Z2 closed form equals the general path") {
  RandomStates rs(2);
  for (int t = 0; t < 1000; ++t) {
    const TwoSiteDensityMatrix rho(rs.z2_form().matrix());
    CHECK(std::abs(concurrence_z2(correlators_from_rho(rho)) - concurrence(rho).concurrence) <
          1e-10);
  }
}

TEST_CASE("U1 roots: worked values and the general path") {
  const U1Roots singlet = u1_roots(CorrelatorSet::from_values(-1, -1, -1));
  const auto s = singlet.sorted();
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(0.0));
  CHECK(s[3] == doctest::Approx(0.0));

  // Symmetric state: u+- = |(1 + xx) +- |xx - zz|| / 4.
  const U1Roots sym = u1_roots(CorrelatorSet::from_values(0.3, 0.3, -0.4));
  CHECK(sym.u_plus == doctest::Approx(0.25 * (1.3 + 0.7)));
  CHECK(sym.u_minus == doctest::Approx(0.25 * (1.3 - 0.7)));

  RandomStates rs(3);
  for (int t = 0; t < 1000; ++t) {
    const TwoSiteDensityMatrix rho(rs.u1_form().matrix());
    const auto r = u1_roots(correlators_from_rho(rho)).sorted();
    const auto g = concurrence(rho).roots;
    for (int k = 0; k < 4; ++k) CHECK(std::abs(r[k] - g[k]) < 1e-10);
  }
  CHECK_THROWS_AS(u1_roots(CorrelatorSet::from_values(-0.9, 0, 0, 0, 0, 0.5, 0.5)), NumericalError);
}

TEST_CASE("U1 value and branch flags") {
  const U1Concurrence singlet = concurrence_u1(CorrelatorSet::from_values(-1, -1, -1));
  CHECK(singlet.value == doctest::Approx(-1.0));
  CHECK_FALSE(singlet.valid());

  const CorrelatorSet ferro = CorrelatorSet::from_values(0.6, 0.6, 0.1);
  const U1Concurrence f = concurrence_u1(ferro);
  CHECK(f.value == doctest::Approx(0.05));
  CHECK(f.valid());
  CHECK(f.certified());
  // These correlators alone do not assemble into a positive matrix.
  CHECK_THROWS_AS(TwoSiteDensityMatrix(rho_from_correlators(ferro)), NumericalError);

  CHECK_FALSE(concurrence_u1(CorrelatorSet::from_values(0.4, 0.4, 0.4)).valid());
}

TEST_CASE("antiferromagnetic correlators map onto the ferromagnetic branch") {
  // Singlet: after the odd-sublattice flip xx = yy = +1 and the U1 value is 1.
  const CorrelatorSet rotated = rotate_odd_sublattice(CorrelatorSet::from_values(-1, -1, -1), 0, 1);
  CHECK(rotated.xx() == doctest::Approx(1.0));
  CHECK(rotated.yy() == doctest::Approx(1.0));
  CHECK(concurrence_u1(rotated).value == doctest::Approx(1.0));
  // Same-sublattice pair: unchanged.
  const CorrelatorSet same = rotate_odd_sublattice(CorrelatorSet::from_values(-0.2, -0.2, 0.1), 0, 2);
  CHECK(same.xx() == doctest::Approx(-0.2));
}

TEST_CASE("u+ stays the largest root along an ED-generated broken path") {
  // Symmetric point: XXZ nn matrix at delta = 0.5. The U(1)-broken entries a
  // and f grow along the path with A, B, C held at their ED values.
  const TwoSiteDensityMatrix base = nn_ground(ModelSpec::xxz(ring(10), 0.5));
  const Z2Form z = extract_z2(base.matrix());
  REQUIRE(z.concurrence() > 0.0);
  for (int k = 0; k <= 40; ++k) {
    const double s = 0.0025 * k;
    U1BrokenForm f;
    f.A = 0.5 * (z.A + z.D);
    f.B = 0.5 * (z.B + z.G);
    f.C_off = z.C_off;
    f.a = 0.5 * s;
    f.f = s;
    Eigen::SelfAdjointEigenSolver<Matrix4c> eig(f.matrix());
    if (eig.eigenvalues().minCoeff() < 0.0) break;
    const TwoSiteDensityMatrix rho(f.matrix());
    const U1Roots r = u1_roots(correlators_from_rho(rho));
    CHECK(r.u_plus >= std::max({r.u_minus, r.v_plus, r.v_minus}));
    CHECK(std::abs(concurrence_u1(correlators_from_rho(rho)).value - concurrence(rho).concurrence) <
          1e-10);
  }
}

TEST_CASE("Ising cubic: unbroken coefficients and roots") {
  IsingForm f;
  f.A = 0.3;
  f.D = 0.2;
  f.B = 0.25;
  f.C_off = 0.1;
  f.F = 0.05;
  const CubicCoeffs c = ising_cubic(f);
  CHECK(c.mu == 0.0);
  CHECK(c.nu == 0.0);
  CHECK(c.alpha == doctest::Approx(f.F * f.F + f.A * f.D));
  CHECK(c.beta == doctest::Approx(0.35 * 0.35));
  CHECK(c.gamma == doctest::Approx(f.D * f.F));
  CHECK(c.delta == doctest::Approx(f.A * f.F));
  const double s = std::sqrt(f.A * f.D);
  const double x1 = (s + f.F) * (s + f.F), x2 = (s - f.F) * (s - f.F), x3 = 0.35 * 0.35;
  CHECK(std::abs(c.g2 - (x1 + x2 + x3)) < 1e-12);
  CHECK(std::abs(c.g1 - (x1 * x2 + x1 * x3 + x2 * x3)) < 1e-12);
  CHECK(std::abs(c.g0 - x1 * x2 * x3) < 1e-12);
  CHECK(c.factored_eigenvalue == doctest::Approx(0.15 * 0.15));
}

TEST_CASE("Ising cubic coefficients follow the listed polynomials") {
  RandomStates rs(4);
  for (int t = 0; t < 200; ++t) {
    const IsingForm f = rs.ising_form(0.1);
    const CubicCoeffs c = ising_cubic(f);
    const double listed_g0 = (c.alpha * c.alpha - 4 * c.gamma * c.delta) * c.beta -
                             4 * c.mu * c.nu * c.alpha - 4 * c.mu * c.mu * c.delta -
                             4 * c.nu * c.nu * c.gamma;
    const double listed_g1 =
        c.alpha * c.alpha + 2 * c.alpha * c.beta - 4 * c.mu * c.nu - 4 * c.gamma * c.delta;
    // Scale of the individual terms bounds the cancellation error.
    const double scale = std::abs(c.alpha * c.alpha * c.beta) + std::abs(c.gamma * c.delta * c.beta) +
                         std::abs(c.mu * c.nu * c.alpha) + 1e-300;
    CHECK(std::abs(c.g0 - listed_g0) < 1e-12 * std::max(scale, std::abs(c.g0)));
    CHECK(std::abs(c.g1 - listed_g1) < 1e-12 * std::max(1.0, std::abs(c.g1)));
    CHECK(c.g2 == doctest::Approx(2 * c.alpha + c.beta));
  }
}

TEST_CASE("cubic roots reproduce the general path on a TFIM matrix") {
  const TwoSiteDensityMatrix rho = nn_ground(ModelSpec::tfim(ring(12), 0.6, 1e-3));
  const IsingForm form = extract_ising(rho.matrix());
  const CubicCoeffs c = ising_cubic(form);
  const auto t = solve_cubic(c.g2, c.g1, c.g0);
  auto roots = concurrence(rho).roots;
  // Drop the root equal to |B - C|.
  const double bc = std::abs(form.B - form.C_off);
  std::vector<double> rest;
  bool dropped = false;
  for (double r : roots) {
    if (!dropped && std::abs(r - bc) < 1e-9) {
      dropped = true;
      continue;
    }
    rest.push_back(r * r);
  }
  REQUIRE(dropped);
  std::sort(rest.begin(), rest.end());
  for (int k = 0; k < 3; ++k) CHECK(std::abs(std::sqrt(t[k]) - std::sqrt(rest[k])) < 1e-9);
}

TEST_CASE("solve_cubic") {
  // (t - 1)(t - 2)(t - 3)
  auto r = solve_cubic(6, 11, 6);
  CHECK(r[0] == doctest::Approx(1.0));
  CHECK(r[1] == doctest::Approx(2.0));
  CHECK(r[2] == doctest::Approx(3.0));
  // Triple root.
  r = solve_cubic(3, 3, 1);
  for (double x : r) CHECK(x == doctest::Approx(1.0).epsilon(1e-5));
  // Negative root.
  CHECK_THROWS_AS(solve_cubic(0, -1, 0), NumericalError);
  // Complex pair: t (t^2 + 1) shifted.
  CHECK_THROWS_AS(solve_cubic(1, 1, 1), NumericalError);
}

TEST_CASE("Eq15 holds with kappa = 2F - (B + C) and fails for the XXZ-field kappa") {
  RandomStates rs(5);
  double worst = 0.0, control = 0.0;
  for (int t = 0; t < 500; ++t) {
    const IsingForm f = rs.ising_form(0.1);
    const CubicCoeffs c = ising_cubic(f);
    worst = std::max(worst, invariance_residual(c, ising_kappa(f)));
    control = std::max(control, invariance_residual(c, xxz_field_kappa(f.symmetric_part())));
  }
  CHECK(worst < 1e-10);
  CHECK(control > 1e-4);
}

TEST_CASE("invariance_residual rejects negative g0") {
  CubicCoeffs c;
  c.g0 = -1.0;
  CHECK_THROWS_AS(invariance_residual(c, 0.1), NumericalError);
}

TEST_CASE("TFIM condition: worked values") {
  CHECK_FALSE(tfim_invariance_condition(CorrelatorSet::from_values(-1, -1, -1)));
  CHECK_FALSE(tfim_invariance_condition(CorrelatorSet::from_values(0, 0, 1, 1, 1)));
  CHECK_THROWS_AS(tfim_invariance_condition(CorrelatorSet::from_values(0, 0, 0, 0.9)),
                  NumericalError);
}

TEST_CASE("TFIM condition holds along the ED hz grid") {
  for (double hz = 0.2; hz <= 2.0 + 1e-9; hz += 0.3) {
    const auto corr = correlators_from_rho(nn_ground(ModelSpec::tfim(ring(10), hz)));
    CHECK(tfim_invariance_condition(corr));
  }
}

TEST_CASE("kappa from roots equals 2F - (B + C) within one TFIM matrix") {
  for (double hz : {0.4, 0.8, 1.5}) {
    const IsingForm f = extract_ising(nn_ground(ModelSpec::tfim(ring(10), hz, 1e-3)).matrix());
    const CubicCoeffs c = ising_cubic(f);
    CHECK(std::abs(kappa_from_roots(solve_cubic(c.g2, c.g1, c.g0)) - ising_kappa(f)) < 1e-8);
    CHECK(invariance_residual(c, ising_kappa(f)) < 1e-8);
  }
}
