#pragma once

#include <array>
#include <string>
#include <variant>

#include "spinent/reduced.hpp"

namespace spinent {

/// Dead-band applied to every strict branch/validity inequality. Inside the
/// band a condition counts as false and the general Wootters path is used.
inline constexpr double kBranchDeadBand = 1e-10;

/// U(1)-symmetric pattern:
///   [A 0 0 0; 0 B C 0; 0 C G 0; 0 0 0 D]
struct Z2Form {
  double A = 0, B = 0, C_off = 0, G = 0, D = 0;

  Matrix4c matrix() const;
  /// 2 max{0, |C| - sqrt(AD)}
  double concurrence() const;
};

/// Z2-symmetric, U(1)-broken pattern:
///   [A a a f; a B C a; a C B a; f a a A],  2A + 2B = 1
struct U1BrokenForm {
  double A = 0, B = 0, C_off = 0, f = 0, a = 0;

  Matrix4c matrix() const;
};

/// Transverse-field Ising pattern:
///   [A a a F; a B C b; a C B b; F b b D],  A + 2B + D = 1
struct IsingForm {
  double A = 0, B = 0, C_off = 0, D = 0, F = 0, a = 0, b = 0;

  Matrix4c matrix() const;
  /// Same form with a = b = 0.
  IsingForm symmetric_part() const;
};

struct GeneralForm {};

enum class FormKind { z2, u1_broken, ising, general };

struct FormClassification {
  FormKind kind = FormKind::general;
  std::variant<Z2Form, U1BrokenForm, IsingForm, GeneralForm> form;
  /// Largest entry violating the chosen pattern (0 for general).
  double residual = 0.0;
};

inline constexpr double kPatternTolerance = 1e-8;

/// Most specific pattern (Z2, then U1-broken, then Ising) whose off-pattern
/// entries are all below kPatternTolerance.
FormClassification classify_form(const TwoSiteDensityMatrix& rho);

/// Off-pattern residuals for each form, exposed for diagnostics.
double z2_residual(const Matrix4c& rho);
double u1_residual(const Matrix4c& rho);
double ising_residual(const Matrix4c& rho);

Z2Form extract_z2(const Matrix4c& rho);
U1BrokenForm extract_u1(const Matrix4c& rho);
IsingForm extract_ising(const Matrix4c& rho);

std::string to_string(FormKind kind);

/// C = 1/2 max{0, |xx + yy| - sqrt((1 + zz)^2 - (zi + zj)^2)}.
/// Throws NumericalError if (1 + zz)^2 < (zi + zj)^2 beyond 1e-10.
double concurrence_z2(const CorrelatorSet& corr);

struct U1Roots {
  double u_plus = 0, u_minus = 0, v_plus = 0, v_minus = 0;

  /// The four values, descending.
  std::array<double, 4> sorted() const;
};

/// Square roots of the eigenvalues of rho rho~ for the U1-broken pattern,
/// written through correlators (sx = <sx_i>).
/// Throws NumericalError if (1 + xx)^2 < 4 sx^2 beyond 1e-10.
U1Roots u1_roots(const CorrelatorSet& corr);

struct U1Concurrence {
  /// 1/2 (xx + yy - zz - 1)
  double value = 0.0;
  /// yy + zz > xx - 1
  bool sum_condition = false;
  /// yy > zz
  bool order_condition = false;
  /// u+ is the largest root and the value is positive: the continuity
  /// premise under which the two conditions decide the branch.
  bool u_plus_leads = false;

  bool valid() const noexcept { return sum_condition && order_condition; }
  /// Both conditions and the premise hold; the value is then the concurrence.
  bool certified() const noexcept { return valid() && u_plus_leads; }
};

U1Concurrence concurrence_u1(const CorrelatorSet& corr);

/// Flips the signs of sx and sy on the odd sublattice (sites with parity -1).
/// Maps antiferromagnetic-xy correlators onto the ferromagnetic convention.
CorrelatorSet rotate_odd_sublattice(const CorrelatorSet& corr, int site_i, int site_j);

struct CubicCoeffs {
  double alpha = 0, beta = 0, gamma = 0, delta = 0, mu = 0, nu = 0;
  /// t^3 - g2 t^2 + g1 t - g0 has the three eigenvalues of rho rho~ other
  /// than the factored one.
  double g0 = 0, g1 = 0, g2 = 0;
  /// Signed square root of g0 (see ising_cubic).
  double p = 0;
  /// |B - C|^2, the eigenvalue that factors out.
  double factored_eigenvalue = 0;
};

/// Coefficients of the reduced characteristic cubic of an Ising form.
///
///   alpha = F^2 + AD - 2ab       beta  = (B + C)^2 - 4ab
///   gamma = DF - b^2             delta = AF - a^2
///   mu    = aD - b(B + C - F)    nu    = a(B + C - F) - bA
///   g2 = 2 alpha + beta
///   g1 = alpha^2 + 2 alpha beta - 4 mu nu - 4 gamma delta
///   g0 = (alpha^2 - 4 gamma delta) beta - 4 mu nu alpha - 4 mu^2 delta - 4 nu^2 gamma
///
/// The last term of g0 carries a minus sign; with a plus sign the cubic no
/// longer matches det(t - rho rho~) once a, b != 0. g0 is a perfect square,
/// g0 = p^2 with p = 2Ab^2 + 2Da^2 - 4Fab - (B + C)(AD - F^2), and is
/// evaluated that way to keep its relative accuracy when it is tiny.
CubicCoeffs ising_cubic(const IsingForm& form);

/// Real roots of t^3 - g2 t^2 + g1 t - g0 = 0 in ascending order
/// (trigonometric solution followed by Newton polishing). Throws
/// NumericalError if a root is below -1e-10 or the cubic has complex roots
/// beyond round-off.
std::array<double, 3> solve_cubic(double g2, double g1, double g0);

/// z - (x + y) for ascending squared roots (x^2, y^2, z^2).
double kappa_from_roots(const std::array<double, 3>& squared_roots);

/// |2 kappa sqrt(g0) - [(kappa^2 - g2)^2 / 4 - g1]| with sqrt(g0) = |p|.
/// Throws NumericalError if g0 < -1e-12.
double invariance_residual(const CubicCoeffs& coeffs, double kappa);

/// 2F - (B + C): the a = b = 0 value of z - (x + y) when sqrt(AD) + F is the
/// largest root.
double ising_kappa(const IsingForm& form);

/// B + C - 2 sqrt(AD): the a = b = f = 0 value for the XXZ chain in a z-field,
/// where (B + C) is the largest root.
double xxz_field_kappa(const IsingForm& form);

/// Concurrence of an Ising form through the cubic: the solved roots joined
/// with |B - C|, then max{0, r1 - r2 - r3 - r4}.
double concurrence_ising_cubic(const IsingForm& form);

/// sqrt((1 + zz)^2 - 4 <sz>^2) + zz - 1 > 2 yy, with <sz> = zi.
/// Throws NumericalError if (1 + zz)^2 < 4 <sz>^2 beyond 1e-10.
bool tfim_invariance_condition(const CorrelatorSet& corr);

/// Left minus right side of the condition above.
double tfim_invariance_margin(const CorrelatorSet& corr);

}  // namespace spinent
