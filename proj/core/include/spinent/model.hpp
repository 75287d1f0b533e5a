#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spinent/lattice.hpp"

namespace spinent {

using cplx = std::complex<double>;

/// Normalized amplitudes over the 2^N product basis. Bit i of the index is
/// site i; a clear bit is spin up.
using StateVector = Eigen::VectorXcd;

enum class ModelFamily { xxz, tfim };

/// Lattice plus Hamiltonian parameters. Unit bond coupling throughout.
///
///   XXZ:  H = sum_<ij> [ -(sx sx + sy sy) + delta sz sz ] + h sum_i (-1)^i sz_i
///   TFIM: H = -sum_<ij> sx sx + hz sum_i sz_i + h sum_i sx_i
///
/// `breaking_field` is h in both cases: a staggered z-field for XXZ and a
/// uniform x-field for TFIM.
struct ModelSpec {
  ModelFamily family;
  LatticeSpec lattice;
  double delta = 0.0;
  double hz_transverse = 0.0;
  double breaking_field = 0.0;

  static ModelSpec xxz(LatticeSpec lattice, double delta, double staggered_field = 0.0);
  static ModelSpec tfim(LatticeSpec lattice, double hz, double hx = 0.0);

  /// lambda = 1 / (2 hz); TFIM with hz > 0 only.
  double lambda() const;

  /// Throws InvalidArgument if the invariants do not hold.
  void validate() const;
};

/// A global Z2 operation that commutes with H when the breaking field is zero.
///
///   parity:    prod_i sz_i   (pi rotation about z; TFIM)
///   spin_flip: prod_i sx_i   (pi rotation about x; XXZ)
struct Z2Symmetry {
  enum class Kind { parity, spin_flip };
  Kind kind;
  int num_sites;

  void apply(std::span<const cplx> in, std::span<cplx> out) const;
  StateVector apply(const StateVector& v) const;
};

/// Matrix-free H acting on the 2^N basis.
///
/// The diagonal is tabulated once; off-diagonal terms are bit-flip masks with a
/// real amplitude, optionally gated on two bits differing. apply() computes
/// each output element as a fixed-order sum over terms, so results do not
/// depend on how many threads share the work.
class HamiltonianAction {
 public:
  struct FlipTerm {
    std::uint64_t flip_mask;
    std::uint64_t require_differ;  // 0, or a two-bit mask whose bits must differ
    double amplitude;
  };

  HamiltonianAction(ModelSpec spec, std::vector<double> diagonal, std::vector<FlipTerm> terms);

  const ModelSpec& spec() const noexcept { return spec_; }
  int num_sites() const noexcept { return spec_.lattice.num_sites(); }
  std::uint64_t dimension() const noexcept { return diagonal_.size(); }

  /// Sets how many threads apply() may use (>= 1). Not synchronized with
  /// concurrent apply() calls; configure before sharing.
  void set_threads(int threads);
  int threads() const noexcept { return threads_; }

  void apply(std::span<const cplx> in, std::span<cplx> out) const;
  StateVector apply(const StateVector& v) const;

  /// <s|H|s>
  double diagonal(std::uint64_t s) const { return diagonal_[s]; }
  const std::vector<FlipTerm>& flip_terms() const noexcept { return terms_; }

  /// The Z2 symmetry of the zero-field model, if the breaking field is zero.
  std::optional<Z2Symmetry> symmetry() const;

  /// Whether H commutes with total sz (XXZ only).
  bool conserves_magnetization() const noexcept;

 private:
  void apply_range(std::span<const cplx> in, std::span<cplx> out, std::uint64_t begin,
                   std::uint64_t end) const;

  ModelSpec spec_;
  std::vector<double> diagonal_;
  std::vector<FlipTerm> terms_;
  int threads_ = 1;
};

HamiltonianAction build_xxz(const ModelSpec& spec);
HamiltonianAction build_tfim(const ModelSpec& spec);

/// Dispatches on spec.family.
HamiltonianAction build_hamiltonian(const ModelSpec& spec);

/// sz_i on basis state s: +1 for a clear bit, -1 for a set bit.
constexpr int sz_eigenvalue(std::uint64_t s, int site) noexcept {
  return ((s >> site) & 1U) ? -1 : 1;
}

}  // namespace spinent
