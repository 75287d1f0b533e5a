#include "spinent/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "spinent/entangle.hpp"
#include "spinent/error.hpp"

namespace spinent {

namespace {

constexpr double kCorrelatorTolerance = 1e-10;
constexpr double kRootNegativeTolerance = 1e-10;

double checked_sqrt(double disc, const char* what) {
  if (disc < -kCorrelatorTolerance) {
    throw NumericalError(std::string(what) + ": correlators violate positivity (radicand " +
                         std::to_string(disc) + ")");
  }
  return std::sqrt(std::max(0.0, disc));
}

double max_imag(const Matrix4c& rho) { return rho.imag().cwiseAbs().maxCoeff(); }

Matrix4c real_matrix(const Eigen::Matrix4d& m) { return m.cast<cplx>(); }

}  // namespace

Matrix4c Z2Form::matrix() const {
  Eigen::Matrix4d m;
  m << A, 0, 0, 0,
       0, B, C_off, 0,
       0, C_off, G, 0,
       0, 0, 0, D;
  return real_matrix(m);
}

double Z2Form::concurrence() const {
  return 2.0 * std::max(0.0, std::abs(C_off) - std::sqrt(std::max(0.0, A * D)));
}

Matrix4c U1BrokenForm::matrix() const {
  Eigen::Matrix4d m;
  m << A, a, a, f,
       a, B, C_off, a,
       a, C_off, B, a,
       f, a, a, A;
  return real_matrix(m);
}

Matrix4c IsingForm::matrix() const {
  Eigen::Matrix4d m;
  m << A, a, a, F,
       a, B, C_off, b,
       a, C_off, B, b,
       F, b, b, D;
  return real_matrix(m);
}

IsingForm IsingForm::symmetric_part() const {
  IsingForm out = *this;
  out.a = 0.0;
  out.b = 0.0;
  return out;
}

double z2_residual(const Matrix4c& rho) {
  double r = max_imag(rho);
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}) {
    r = std::max(r, std::abs(rho(i, j)));
  }
  return r;
}

Z2Form extract_z2(const Matrix4c& rho) {
  return {rho(0, 0).real(), rho(1, 1).real(), rho(1, 2).real(), rho(2, 2).real(),
          rho(3, 3).real()};
}

double u1_residual(const Matrix4c& rho) {
  const U1BrokenForm f = extract_u1(rho);
  return (rho - f.matrix()).cwiseAbs().maxCoeff();
}

U1BrokenForm extract_u1(const Matrix4c& rho) {
  U1BrokenForm f;
  f.A = 0.5 * (rho(0, 0).real() + rho(3, 3).real());
  f.B = 0.5 * (rho(1, 1).real() + rho(2, 2).real());
  f.C_off = rho(1, 2).real();
  f.f = rho(0, 3).real();
  f.a = 0.25 * (rho(0, 1).real() + rho(0, 2).real() + rho(1, 3).real() + rho(2, 3).real());
  return f;
}

double ising_residual(const Matrix4c& rho) {
  const IsingForm f = extract_ising(rho);
  return (rho - f.matrix()).cwiseAbs().maxCoeff();
}

IsingForm extract_ising(const Matrix4c& rho) {
  IsingForm f;
  f.A = rho(0, 0).real();
  f.B = 0.5 * (rho(1, 1).real() + rho(2, 2).real());
  f.C_off = rho(1, 2).real();
  f.D = rho(3, 3).real();
  f.F = rho(0, 3).real();
  f.a = 0.5 * (rho(0, 1).real() + rho(0, 2).real());
  f.b = 0.5 * (rho(1, 3).real() + rho(2, 3).real());
  return f;
}

FormClassification classify_form(const TwoSiteDensityMatrix& rho) {
  const Matrix4c& m = rho.matrix();
  FormClassification out;
  if (double r = z2_residual(m); r < kPatternTolerance) {
    out.kind = FormKind::z2;
    out.form = extract_z2(m);
    out.residual = r;
  } else if (r = u1_residual(m); r < kPatternTolerance) {
    out.kind = FormKind::u1_broken;
    out.form = extract_u1(m);
    out.residual = r;
  } else if (r = ising_residual(m); r < kPatternTolerance) {
    out.kind = FormKind::ising;
    out.form = extract_ising(m);
    out.residual = r;
  } else {
    out.kind = FormKind::general;
    out.form = GeneralForm{};
    out.residual = 0.0;
  }
  return out;
}

std::string to_string(FormKind kind) {
  switch (kind) {
    case FormKind::z2: return "z2";
    case FormKind::u1_broken: return "u1_broken";
    case FormKind::ising: return "ising";
    case FormKind::general: return "general";
  }
  return "general";
}

double concurrence_z2(const CorrelatorSet& corr) {
  const double zsum = corr.zi() + corr.zj();
  const double root = checked_sqrt((1.0 + corr.zz()) * (1.0 + corr.zz()) - zsum * zsum,
                                   "concurrence_z2");
  return 0.5 * std::max(0.0, std::abs(corr.xx() + corr.yy()) - root);
}

std::array<double, 4> U1Roots::sorted() const {
  std::array<double, 4> r{u_plus, u_minus, v_plus, v_minus};
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

U1Roots u1_roots(const CorrelatorSet& corr) {
  const double sx = corr.xi();
  const double root = checked_sqrt((1.0 + corr.xx()) * (1.0 + corr.xx()) - 4.0 * sx * sx,
                                   "u1_roots");
  const double spread = std::abs(corr.yy() - corr.zz());
  U1Roots r;
  r.u_plus = 0.25 * std::abs(root + spread);
  r.u_minus = 0.25 * std::abs(root - spread);
  r.v_plus = 0.25 * std::abs(1.0 - corr.xx() + (corr.yy() + corr.zz()));
  r.v_minus = 0.25 * std::abs(1.0 - corr.xx() - (corr.yy() + corr.zz()));
  return r;
}

U1Concurrence concurrence_u1(const CorrelatorSet& corr) {
  U1Concurrence out;
  out.value = 0.5 * (corr.xx() + corr.yy() - corr.zz() - 1.0);
  out.sum_condition = corr.yy() + corr.zz() - (corr.xx() - 1.0) > kBranchDeadBand;
  out.order_condition = corr.yy() - corr.zz() > kBranchDeadBand;
  try {
    const U1Roots r = u1_roots(corr);
    out.u_plus_leads = out.value > kBranchDeadBand && r.u_plus - r.u_minus > kBranchDeadBand &&
                       r.u_plus - r.v_plus > kBranchDeadBand &&
                       r.u_plus - r.v_minus > kBranchDeadBand;
  } catch (const NumericalError&) {
    out.u_plus_leads = false;
  }
  return out;
}

CorrelatorSet rotate_odd_sublattice(const CorrelatorSet& corr, int site_i, int site_j) {
  CorrelatorSet out = corr;
  const bool flip_i = site_i % 2 != 0;
  const bool flip_j = site_j % 2 != 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      int sign = 1;
      if (flip_i && (a == CorrelatorSet::X || a == CorrelatorSet::Y)) sign = -sign;
      if (flip_j && (b == CorrelatorSet::X || b == CorrelatorSet::Y)) sign = -sign;
      out.pauli[a][b] *= sign;
    }
  }
  return out;
}

CubicCoeffs ising_cubic(const IsingForm& f) {
  // Evaluated in extended precision: near-pure states have g0 and g1 many
  // orders below the individual terms.
  using real = long double;
  const real A = f.A, B = f.B, C = f.C_off, D = f.D, F = f.F, a = f.a, b = f.b;
  const real bc = B + C;
  const real alpha = F * F + A * D - 2 * a * b;
  const real beta = bc * bc - 4 * a * b;
  const real gamma = D * F - b * b;
  const real delta = A * F - a * a;
  const real mu = a * D - b * (bc - F);
  const real nu = a * (bc - F) - b * A;
  const real p = 2 * A * b * b + 2 * D * a * a - 4 * F * a * b - bc * (A * D - F * F);

  CubicCoeffs c;
  c.alpha = static_cast<double>(alpha);
  c.beta = static_cast<double>(beta);
  c.gamma = static_cast<double>(gamma);
  c.delta = static_cast<double>(delta);
  c.mu = static_cast<double>(mu);
  c.nu = static_cast<double>(nu);
  c.g2 = static_cast<double>(2 * alpha + beta);
  c.g1 = static_cast<double>(alpha * alpha + 2 * alpha * beta - 4 * mu * nu - 4 * gamma * delta);
  c.p = static_cast<double>(p);
  c.g0 = static_cast<double>(p * p);
  c.factored_eigenvalue = static_cast<double>((B - C) * (B - C));
  return c;
}

std::array<double, 3> solve_cubic(double g2, double g1, double g0) {
  // t^3 + b t^2 + c t + d, shifted to s^3 + p s + q with t = s - b/3.
  const double b = -g2, c = g1, d = -g0;
  const double shift = -b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double scale = std::max({std::abs(g2), std::sqrt(std::abs(g1)), std::cbrt(std::abs(g0)),
                                 1e-300});

  std::array<double, 3> t{};
  if (p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      t[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift;
    }
    const double disc = 4.0 * p * p * p + 27.0 * q * q;
    if (disc > 1e-9 * std::pow(scale, 6)) {
      throw NumericalError("solve_cubic: complex roots");
    }
  } else {
    const double root_disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double s1 = std::cbrt(-q / 2.0 + root_disc) + std::cbrt(-q / 2.0 - root_disc);
    const double pair_disc = -3.0 * s1 * s1 - 4.0 * p;
    if (pair_disc < -1e-9 * scale * scale) {
      throw NumericalError("solve_cubic: complex roots");
    }
    t = {s1 + shift, -0.5 * s1 + shift, -0.5 * s1 + shift};
  }

  for (double& r : t) {
    for (int it = 0; it < 8; ++it) {
      const double f = ((r - g2) * r + g1) * r - g0;
      const double df = (3.0 * r - 2.0 * g2) * r + g1;
      if (df == 0.0) break;
      const double step = f / df;
      const double next = r - step;
      if (!std::isfinite(next)) break;
      // Only accept steps that do not increase |f| (guards near-double roots).
      const double fn = ((next - g2) * next + g1) * next - g0;
      if (std::abs(fn) > std::abs(f)) break;
      r = next;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
  }
  std::sort(t.begin(), t.end());
  if (t[0] < -kRootNegativeTolerance) {
    throw NumericalError("solve_cubic: negative root " + std::to_string(t[0]));
  }
  for (double& r : t) r = std::max(0.0, r);
  return t;
}

double kappa_from_roots(const std::array<double, 3>& sq) {
  const double x = std::sqrt(std::max(0.0, sq[0]));
  const double y = std::sqrt(std::max(0.0, sq[1]));
  const double z = std::sqrt(std::max(0.0, sq[2]));
  return z - (x + y);
}

double invariance_residual(const CubicCoeffs& coeffs, double kappa) {
  if (coeffs.g0 < -1e-12) {
    throw NumericalError("invariance_residual: g0 = " + std::to_string(coeffs.g0) + " < 0");
  }
  const double lhs = 2.0 * kappa * std::abs(coeffs.p);
  const double k2 = kappa * kappa - coeffs.g2;
  const double rhs = 0.25 * k2 * k2 - coeffs.g1;
  return std::abs(lhs - rhs);
}

double ising_kappa(const IsingForm& form) { return 2.0 * form.F - (form.B + form.C_off); }

double xxz_field_kappa(const IsingForm& form) {
  return form.B + form.C_off - 2.0 * std::sqrt(std::max(0.0, form.A * form.D));
}

double concurrence_ising_cubic(const IsingForm& form) {
  const CubicCoeffs c = ising_cubic(form);
  const auto sq = solve_cubic(c.g2, c.g1, c.g0);
  return concurrence_from_roots({std::sqrt(sq[0]), std::sqrt(sq[1]), std::sqrt(sq[2]),
                                 std::abs(form.B - form.C_off)});
}

double tfim_invariance_margin(const CorrelatorSet& corr) {
  const double z = corr.zi();
  const double root = checked_sqrt((1.0 + corr.zz()) * (1.0 + corr.zz()) - 4.0 * z * z,
                                   "tfim_invariance_condition");
  return root + corr.zz() - 1.0 - 2.0 * corr.yy();
}

bool tfim_invariance_condition(const CorrelatorSet& corr) {
  return tfim_invariance_margin(corr) > kBranchDeadBand;
}

}  // namespace spinent
