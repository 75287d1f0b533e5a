#include <doctest.h>

#include "oracles.hpp"
#include "spinent/error.hpp"
#include "spinent/solver.hpp"

using namespace spinent;

namespace {

double dense_ground_energy(const oracle::Mat& h) {
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

TEST_CASE("Lanczos matches dense ground energies on small chains") {
  for (int n : {4, 6, 8}) {
    for (double delta : {-0.5, 1.0, 2.5}) {
      const auto h = build_xxz(ModelSpec::xxz(LatticeSpec(n, Boundary::periodic), delta, 0.05));
      const GroundState gs = lanczos_ground_state(h);
      CHECK(gs.report.ground_energy ==
            doctest::Approx(dense_ground_energy(oracle::xxz(n, true, delta, 0.05))).epsilon(1e-12));
      CHECK(gs.report.residual < 1e-10);
      CHECK(std::abs(gs.state.norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Lanczos matches the dense path at N=12, TFIM hz=0.5") {
  const auto h = build_tfim(ModelSpec::tfim(LatticeSpec(12, Boundary::periodic), 0.5));
  const GroundState gs = lanczos_ground_state(h);
  const DenseSpectrum spec = dense_spectrum(h);
  CHECK(std::abs(gs.report.ground_energy - spec.energies(0)) < 1e-9);
  // Both sectors are solved, so the exponentially small gap is resolved.
  CHECK(std::abs(gs.report.gap - (spec.energies(1) - spec.energies(0))) < 1e-8);
}

TEST_CASE("energy history is variational and non-increasing") {
  const auto h = build_xxz(ModelSpec::xxz(LatticeSpec(10, Boundary::periodic), 1.0));
  const GroundState gs = lanczos_ground_state(h);
  const double e0 = dense_ground_energy(oracle::xxz(10, true, 1.0, 0.0));
  const auto& hist = gs.report.energy_history;
  REQUIRE(!hist.empty());
  for (std::size_t k = 0; k < hist.size(); ++k) {
    CHECK(hist[k] >= e0 - 1e-10);
    if (k > 0) CHECK(hist[k] <= hist[k - 1] + 1e-10);
  }
}

TEST_CASE("ground state lies in one Z2 sector") {
  const auto h = build_tfim(ModelSpec::tfim(LatticeSpec(10, Boundary::periodic), 0.3));
  const GroundState gs = lanczos_ground_state(h);
  const auto sym = h.symmetry();
  REQUIRE(sym);
  CHECK(std::abs(gs.report.sector) == 1);
  CHECK((sym->apply(gs.state) - double(gs.report.sector) * gs.state).norm() < 1e-8);
  CHECK(gs.report.near_degenerate == (gs.report.gap < LanczosOptions{}.degeneracy_tolerance));
}

TEST_CASE("start vector is deterministic") {
  const StateVector a = start_vector(64, 3);
  const StateVector b = start_vector(64, 3);
  const StateVector c = start_vector(64, 4);
  CHECK((a - b).norm() == 0.0);
  CHECK((a - c).norm() > 0.0);
  CHECK(std::abs(a.norm() - 1.0) < 1e-14);
}

TEST_CASE("iteration cap raises ConvergenceError") {
  const auto h = build_xxz(ModelSpec::xxz(LatticeSpec(12, Boundary::periodic), 1.0, 0.01));
  LanczosOptions opts;
  opts.max_iterations = 5;
  CHECK_THROWS_AS(lanczos_ground_state(h, opts), ConvergenceError);
}

TEST_CASE("dense eigenpairs are orthonormal and satisfy H v = E v") {
  for (const ModelSpec& spec : {ModelSpec::xxz(LatticeSpec(8, Boundary::periodic), 1.0),
                                ModelSpec::tfim(LatticeSpec(8, Boundary::open), 0.7, 0.05)}) {
    const auto h = build_hamiltonian(spec);
    const DenseSpectrum d = dense_spectrum(h);
    const auto dim = d.energies.size();
    const Eigen::MatrixXd gram = d.vectors.transpose() * d.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      const StateVector v = d.vectors.col(k).cast<cplx>();
      worst = std::max(worst, (h.apply(v) - d.energies(k) * v).norm());
      if (k > 0) CHECK(d.energies(k) >= d.energies(k - 1));
    }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("dense path refuses large N") {
  const auto h = build_tfim(ModelSpec::tfim(LatticeSpec(13, Boundary::periodic), 1.0));
  CHECK_THROWS_AS(dense_spectrum(h), InvalidArgument);
}

TEST_CASE("Gibbs weights: normalization and limits") {
  const auto h = build_xxz(ModelSpec::xxz(LatticeSpec(6, Boundary::periodic), 1.5));
  const DenseSpectrum spec = dense_spectrum(h);
  const double gap = spec.energies(1) - spec.energies(0);
  REQUIRE(gap > 1e-3);
  const ThermalEnsemble cold(spec, 60.0 / gap);
  CHECK(cold.weights().sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cold.weights()(0) == doctest::Approx(1.0).epsilon(1e-12));

  const ThermalEnsemble hot(spec, 1e-9);
  const double uniform = 1.0 / static_cast<double>(spec.energies.size());
  CHECK(std::abs(hot.weights().maxCoeff() - uniform) < 1e-7);

  CHECK_THROWS_AS(ThermalEnsemble(spec, 0.0), InvalidArgument);
  CHECK_THROWS_AS(ThermalEnsemble(spec, -1.0), InvalidArgument);
}

TEST_CASE("Gibbs energy matches a direct trace") {
  const int n = 5;
  const auto h = build_tfim(ModelSpec::tfim(LatticeSpec(n, Boundary::open), 0.7, 0.2));
  const ThermalEnsemble ens(dense_spectrum(h), 1.3);
  const cplx e = gibbs_expectation(ens, [&](const StateVector& v) { return h.apply(v); });
  const oracle::Mat hm = oracle::tfim(n, false, 0.7, 0.2);
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(hm);
  const Eigen::VectorXd w = (-1.3 * es.eigenvalues().array()).exp();
  CHECK(e.real() == doctest::Approx((w.array() * es.eigenvalues().array()).sum() / w.sum()));
  CHECK(std::abs(e.imag()) < 1e-12);
}
