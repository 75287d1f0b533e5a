#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinent/entangle.hpp"
#include "spinent/lattice.hpp"
#include "spinent/model.hpp"
#include "spinent/reduced.hpp"
#include "spinent/solver.hpp"
#include "spinent/symmetry.hpp"

namespace spinent {

struct SweepConfig {
  ModelFamily family = ModelFamily::xxz;
  int num_sites = 12;
  Boundary boundary = Boundary::periodic;
  /// delta values (XXZ) or hz values (TFIM).
  std::vector<double> grid;
  std::vector<int> separations{1};
  std::vector<double> breaking_fields{0.0};
  /// 0 selects the Lanczos ground state; beta > 0 the dense Gibbs state.
  double beta = 0.0;
  int jobs = 1;
  std::uint64_t seed = 20031;
  LanczosOptions solver;
  /// Empty or "-" writes to stdout.
  std::string output;

  /// Throws InvalidArgument.
  void validate() const;
};

/// Reads a JSON object whose keys mirror the command-line flags (model,
/// sites, boundary, grid, sep, break, beta, jobs, seed, out) plus an optional
/// "solver" object (tolerance, max_iterations, max_basis, keep). Keys not
/// present keep the values already in `base`.
SweepConfig parse_sweep_config(std::istream& json, SweepConfig base = {});

/// Sites (i, j) at separation r: (0, r) on a ring, centered on an open chain.
std::pair<int, int> pair_sites(const LatticeSpec& lattice, int separation);

/// Everything derived from one reduced density matrix.
struct PairAnalysis {
  ConcurrenceReport general;
  FormClassification form;
  CorrelatorSet corr;
  /// Closed-form concurrence for the classified form, if one applies.
  std::optional<double> closed_form;
  /// Branch conditions of the closed form (U1-broken only).
  std::optional<bool> branch_ok;
  /// TFIM invariance condition, evaluated for Ising-form matrices.
  std::optional<bool> invariance_condition;
  /// Reason a closed form or condition could not be evaluated.
  std::string note;
};

PairAnalysis analyze_pair(const TwoSiteDensityMatrix& rho);

/// Reduced matrices of one model point for each separation.
struct PointResult {
  double gap = 0.0;
  std::vector<TwoSiteDensityMatrix> pairs;
};

/// beta == 0: ground state (Lanczos); beta > 0: Gibbs state (dense).
PointResult solve_point(const ModelSpec& spec, const std::vector<int>& separations, double beta,
                        const LanczosOptions& opts = {});

struct SweepRow {
  double param = 0.0;
  int separation = 0;
  double breaking_field = 0.0;
  bool ok = true;
  double gap = 0.0;
  PairAnalysis analysis;
  std::string note;
};

/// One row per (param, separation, breaking field) in that nesting order.
/// Failures are recorded on the affected rows instead of aborting the sweep.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

std::string csv_header();
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace spinent
