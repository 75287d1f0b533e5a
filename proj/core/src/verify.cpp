#include "spinent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "spinent/entangle.hpp"
#include "spinent/error.hpp"
#include "spinent/random_states.hpp"
#include "spinent/reduced.hpp"
#include "spinent/symmetry.hpp"

namespace spinent {

namespace {

constexpr int kDefaultTrials = 1000;

class Check {
 public:
  Check(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void residual(double r) {
    ++result_.trials;
    result_.worst_residual = std::max(result_.worst_residual, r);
    if (!(r <= result_.tolerance)) ++result_.failures;
  }

  void expect(bool ok) {
    ++result_.trials;
    if (!ok) ++result_.failures;
  }

  int trials() const { return result_.trials; }
  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

// Eigenvalues of rho rho~ from the general complex eigensolver, descending.
std::array<double, 4> nonsymmetric_squared_roots(const Matrix4c& rho) {
  Eigen::ComplexEigenSolver<Matrix4c> eig(rho * spin_flip(rho), false);
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = eig.eigenvalues()(k).real();
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double binary_entropy(double c) {
  const double x = 0.5 + 0.5 * std::sqrt(std::max(0.0, 1.0 - c * c));
  auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return (term(x) + term(1.0 - x)) / std::log(2.0);
}

double max_root_difference(std::array<double, 4> a, std::array<double, 4> b) {
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

int trial_count(int trials) { return trials > 0 ? trials : kDefaultTrials; }

SuiteResult wootters_suite(RandomStates& rs, int n) {
  Check oracle("squared_roots_vs_general_eigensolver", 1e-12);
  Check unitary("local_unitary_invariance", 1e-10);
  Check pure("pure_state_reduction", 1e-12);
  Check eof("eof_binary_entropy", 1e-12);
  for (int t = 0; t < n; ++t) {
    const TwoSiteDensityMatrix rho = rs.density_matrix(1 + t % 4);
    const ConcurrenceReport rep = concurrence(rho);
    const auto lam = nonsymmetric_squared_roots(rho.matrix());
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(rep.roots[k] * rep.roots[k] - lam[k]));
    oracle.residual(worst);

    const Matrix4c u = kron2(rs.su2(), rs.su2());
    const TwoSiteDensityMatrix rotated(u * rho.matrix() * u.adjoint());
    unitary.residual(std::abs(concurrence(rotated).concurrence - rep.concurrence));

    const Vector4c psi = rs.pure_state();
    const TwoSiteDensityMatrix proj(psi * psi.adjoint());
    pure.residual(std::abs(concurrence(proj).concurrence - pure_state_concurrence(psi)));

    eof.residual(std::abs(rep.eof - binary_entropy(rep.concurrence)));
  }
  return {"wootters", {oracle.result(), unitary.result(), pure.result(), eof.result()}};
}

SuiteResult mixture_suite(RandomStates& rs, int n) {
  Check closed("min_c_d_vs_general", 1e-10);
  for (int t = 0; t < n; ++t) {
    const auto [plus, minus] = rs.equal_concurrence_pair();
    const MixtureConcurrence mix = mixture_concurrence(plus, minus);
    const TwoSiteDensityMatrix rho(0.5 * (plus * plus.adjoint() + minus * minus.adjoint()));
    closed.residual(std::abs(mix.value - concurrence(rho).concurrence));
  }
  return {"mixture", {closed.result()}};
}

SuiteResult convexity_suite(RandomStates& rs, int n) {
  Check random_pairs("random_pairs", 1e-10);
  Check pure_pairs("equal_concurrence_pure_pairs", 1e-10);
  for (int t = 0; t < n; ++t) {
    const auto d = convexity_check(rs.density_matrix(1 + t % 4), rs.density_matrix(1 + (t / 4) % 4));
    random_pairs.residual(std::max(0.0, d.mixture - d.average));

    const auto [plus, minus] = rs.equal_concurrence_pair();
    const auto e = convexity_check(TwoSiteDensityMatrix(plus * plus.adjoint()),
                                   TwoSiteDensityMatrix(minus * minus.adjoint()));
    pure_pairs.residual(std::max(0.0, e.mixture - e.average));
  }
  return {"convexity", {random_pairs.result(), pure_pairs.result()}};
}

SuiteResult z2_suite(RandomStates& rs, int n) {
  Check correlators("correlator_form_vs_general", 1e-10);
  Check entries("entry_form_vs_general", 1e-10);
  for (int t = 0; t < n; ++t) {
    const Z2Form form = rs.z2_form();
    const TwoSiteDensityMatrix rho(form.matrix());
    const double general = concurrence(rho).concurrence;
    correlators.residual(std::abs(concurrence_z2(correlators_from_rho(rho)) - general));
    entries.residual(std::abs(form.concurrence() - general));
  }
  return {"z2", {correlators.result(), entries.result()}};
}

SuiteResult u1_suite(RandomStates& rs, int n) {
  Check roots("root_multiset_vs_general", 1e-10);
  Check branch("branch_value_vs_general", 1e-10);
  for (int t = 0; t < n; ++t) {
    const TwoSiteDensityMatrix rho(rs.u1_form().matrix());
    const CorrelatorSet corr = correlators_from_rho(rho);
    roots.residual(max_root_difference(u1_roots(corr).sorted(), concurrence(rho).roots));
  }
  // Only instances inside the branch count; draw until enough are found.
  for (int draws = 0; branch.trials() < n && draws < 200 * n; ++draws) {
    const TwoSiteDensityMatrix rho(rs.u1_form().matrix());
    const CorrelatorSet corr = correlators_from_rho(rho);
    const U1Concurrence u1 = concurrence_u1(corr);
    if (u1.certified()) branch.residual(std::abs(u1.value - concurrence(rho).concurrence));
  }
  return {"u1", {roots.result(), branch.result()}};
}

SuiteResult ising_suite(RandomStates& rs, int n) {
  Check roots("cubic_roots_vs_general", 1e-10);
  Check value("cubic_concurrence_vs_general", 1e-10);
  Check symmetric("symmetric_functions_relative", 1e-10);
  Check unbroken("unbroken_root_identity", 1e-12);
  Check eq15("invariance_residual_psd", 1e-10);
  for (int t = 0; t < n; ++t) {
    const IsingForm form = rs.ising_form(t % 2 == 0 ? 0.1 : 0.02);
    const TwoSiteDensityMatrix rho(form.matrix());
    const ConcurrenceReport rep = concurrence(rho);
    const CubicCoeffs c = ising_cubic(form);
    const auto t3 = solve_cubic(c.g2, c.g1, c.g0);

    std::array<double, 4> squared{t3[0], t3[1], t3[2], c.factored_eigenvalue};
    std::sort(squared.begin(), squared.end(), std::greater<>());
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      worst = std::max(worst, std::abs(squared[k] - rep.roots[k] * rep.roots[k]));
    }
    roots.residual(worst);
    value.residual(std::abs(concurrence_ising_cubic(form) - rep.concurrence));

    const double e1 = t3[0] + t3[1] + t3[2];
    const double e2 = t3[0] * t3[1] + t3[0] * t3[2] + t3[1] * t3[2];
    const double e3 = t3[0] * t3[1] * t3[2];
    const double scale = std::max({1e-300, std::abs(c.g2), std::abs(c.g1), std::abs(c.g0)});
    symmetric.residual(std::max({std::abs(e1 - c.g2) / std::max(std::abs(c.g2), scale * 1e-3),
                                 std::abs(e2 - c.g1) / std::max(std::abs(c.g1), scale * 1e-3),
                                 std::abs(e3 - c.g0) / std::max(std::abs(c.g0), scale * 1e-3)}));

    const IsingForm sym = form.symmetric_part();
    const CubicCoeffs s = ising_cubic(sym);
    const double p = std::sqrt(sym.A * sym.D) + sym.F;
    const double m = std::sqrt(sym.A * sym.D) - sym.F;
    const double q = sym.B + sym.C_off;
    const double x1 = p * p, x2 = m * m, x3 = q * q;
    unbroken.residual(std::max({std::abs(s.g2 - (x1 + x2 + x3)),
                                std::abs(s.g1 - (x1 * x2 + x1 * x3 + x2 * x3)),
                                std::abs(s.g0 - x1 * x2 * x3)}));

    eq15.residual(invariance_residual(c, ising_kappa(form)));
  }
  return {"ising",
          {roots.result(), value.result(), symmetric.result(), unbroken.result(), eq15.result()}};
}

SuiteResult conditions_suite(RandomStates& rs, int n) {
  // The TFIM condition is sqrt(AD) + F > B + C written through correlators.
  Check eq16("tfim_condition_entry_form", 0.0);
  // With a = b = 0, z - (x + y) = 2F - (B + C) exactly when sqrt(AD) + F is
  // the largest root (margins below 1e-6 are skipped).
  Check kappa("kappa_iff_leading_root", 0.0);
  // Under the continuity premise (u+ largest, C > 0) the two conditions hold
  // exactly when the U1 value equals the concurrence.
  Check u1("u1_conditions_iff_value", 0.0);
  for (int t = 0; t < n; ++t) {
    IsingForm form = rs.ising_form(0.0).symmetric_part();
    const TwoSiteDensityMatrix rho(form.matrix());
    const CorrelatorSet corr = correlators_from_rho(rho);
    const double lead = std::sqrt(form.A * form.D) + form.F;
    const double other = form.B + form.C_off;
    if (std::abs(lead - other) > 1e-8) eq16.expect(tfim_invariance_condition(corr) == (lead > other));

    const double rival = std::max(std::abs(std::sqrt(form.A * form.D) - form.F), std::abs(other));
    if (std::abs(lead - rival) > 1e-6) {
      const CubicCoeffs c = ising_cubic(form);
      const double k = kappa_from_roots(solve_cubic(c.g2, c.g1, c.g0));
      const bool equal = std::abs(k - ising_kappa(form)) < 1e-7;
      kappa.expect(equal == (lead > rival));
    }
  }
  for (int draws = 0; u1.trials() < n && draws < 200 * n; ++draws) {
    const TwoSiteDensityMatrix rho(rs.u1_form().matrix());
    const CorrelatorSet corr = correlators_from_rho(rho);
    const U1Concurrence v = concurrence_u1(corr);
    if (!v.u_plus_leads) continue;
    const double gap = std::abs(v.value - concurrence(rho).concurrence);
    if (gap > 1e-10 && gap < 1e-6) continue;
    u1.expect(v.valid() == (gap <= 1e-10));
  }
  return {"conditions", {eq16.result(), kappa.result(), u1.result()}};
}

const std::map<std::string, std::function<SuiteResult(RandomStates&, int)>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(RandomStates&, int)>> r{
      {"wootters", wootters_suite}, {"mixture", mixture_suite}, {"convexity", convexity_suite},
      {"z2", z2_suite},             {"u1", u1_suite},           {"ising", ising_suite},
      {"conditions", conditions_suite}};
  return r;
}

}  // namespace

bool SuiteResult::passed() const noexcept {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

std::string SuiteResult::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = name;
  j["passed"] = passed();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"trials", c.trials},
                   {"failures", c.failures},
                   {"worst_residual", c.worst_residual},
                   {"tolerance", c.tolerance},
                   {"passed", c.passed()}});
  }
  return j.dump();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"wootters", "mixture", "convexity", "z2",
                                              "u1",       "ising",   "conditions"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int trials) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InvalidArgument("unknown verification suite '" + name + "'");
  RandomStates rs(seed);
  return it->second(rs, trial_count(trials));
}

std::vector<SuiteResult> run_verification(const std::string& name, std::uint64_t seed, int trials) {
  if (name != "all") return {run_suite(name, seed, trials)};
  std::vector<SuiteResult> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n, seed, trials));
  return out;
}

}  // namespace spinent
