#pragma once

#include <iosfwd>

#include "spinent/reduced.hpp"

namespace spinent {

/// Reads a matrix in the exchange format and prints a key: value report
/// (validity diagnostics, form, roots, C, E_f, closed-form branches and the
/// TFIM invariance condition for Ising-form input).
///
/// Throws InvalidArgument on a malformed file. For a matrix that is not a
/// valid density matrix, the diagnostics are printed before NumericalError
/// is thrown.
void analyze_matrix(std::istream& in, std::ostream& out);

/// Report for an already validated matrix.
void write_analysis(std::ostream& out, const TwoSiteDensityMatrix& rho);

}  // namespace spinent
