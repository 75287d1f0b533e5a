#include "spinent/analyze.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinent/error.hpp"
#include "spinent/sweep.hpp"
#include "spinent/symmetry.hpp"

namespace spinent {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

void write_diagnostics(std::ostream& out, const Matrix4c& m) {
  const Matrix4c herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> eig(herm, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  out << "hermiticity_error: " << num((m - m.adjoint()).cwiseAbs().maxCoeff()) << '\n'
      << "trace: " << num(m.trace().real()) << '\n'
      << "eigenvalues: " << num(ev(0)) << ' ' << num(ev(1)) << ' ' << num(ev(2)) << ' '
      << num(ev(3)) << '\n';
}

}  // namespace

void write_analysis(std::ostream& out, const TwoSiteDensityMatrix& rho) {
  const PairAnalysis a = analyze_pair(rho);
  out << "form: " << to_string(a.form.kind) << '\n'
      << "form_residual: " << num(a.form.residual) << '\n'
      << "roots: " << num(a.general.roots[0]) << ' ' << num(a.general.roots[1]) << ' '
      << num(a.general.roots[2]) << ' ' << num(a.general.roots[3]) << '\n'
      << "concurrence: " << num(a.general.concurrence) << '\n'
      << "eof: " << num(a.general.eof) << '\n'
      << "xx: " << num(a.corr.xx()) << '\n'
      << "yy: " << num(a.corr.yy()) << '\n'
      << "zz: " << num(a.corr.zz()) << '\n'
      << "sz_i: " << num(a.corr.zi()) << '\n'
      << "sz_j: " << num(a.corr.zj()) << '\n'
      << "sx_i: " << num(a.corr.xi()) << '\n'
      << "sx_j: " << num(a.corr.xj()) << '\n';
  if (a.closed_form) out << "closed_form_concurrence: " << num(*a.closed_form) << '\n';
  if (a.branch_ok) out << "branch_conditions: " << yes_no(*a.branch_ok) << '\n';

  if (a.form.kind == FormKind::ising) {
    const auto& form = std::get<IsingForm>(a.form.form);
    try {
      const CubicCoeffs cubic = ising_cubic(form);
      out << "cubic: g2 " << num(cubic.g2) << " g1 " << num(cubic.g1) << " g0 " << num(cubic.g0)
          << '\n';
      const auto t = solve_cubic(cubic.g2, cubic.g1, cubic.g0);
      out << "cubic_roots: " << num(t[0]) << ' ' << num(t[1]) << ' ' << num(t[2]) << '\n';
      const double kappa = ising_kappa(form);
      out << "kappa_roots: " << num(kappa_from_roots(t)) << '\n'
          << "kappa_2F_minus_BC: " << num(kappa) << '\n'
          << "invariance_residual: " << num(invariance_residual(cubic, kappa)) << '\n';
      out << "tfim_condition_margin: " << num(tfim_invariance_margin(a.corr)) << '\n';
    } catch (const NumericalError& e) {
      out << "cubic_error: " << e.what() << '\n';
    }
  }
  if (a.invariance_condition) {
    out << "tfim_condition: " << yes_no(*a.invariance_condition) << '\n';
  }
  if (!a.note.empty()) out << "note: " << a.note << '\n';
}

void analyze_matrix(std::istream& in, std::ostream& out) {
  const Matrix4c m = parse_density_matrix(in);
  write_diagnostics(out, m);
  const TwoSiteDensityMatrix rho(m);
  out << "valid: true\n";
  write_analysis(out, rho);
}

}  // namespace spinent
