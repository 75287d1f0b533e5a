#include "spinent/model.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "spinent/error.hpp"

namespace spinent {

ModelSpec ModelSpec::xxz(LatticeSpec lattice, double delta, double staggered_field) {
  ModelSpec spec{ModelFamily::xxz, lattice, delta, 0.0, staggered_field};
  spec.validate();
  return spec;
}

ModelSpec ModelSpec::tfim(LatticeSpec lattice, double hz, double hx) {
  ModelSpec spec{ModelFamily::tfim, lattice, 0.0, hz, hx};
  spec.validate();
  return spec;
}

double ModelSpec::lambda() const {
  if (family != ModelFamily::tfim || !(hz_transverse > 0.0)) {
    throw InvalidArgument("lambda is defined for the TFIM with hz > 0 only");
  }
  return 1.0 / (2.0 * hz_transverse);
}

void ModelSpec::validate() const {
  if (!std::isfinite(delta) || !std::isfinite(hz_transverse) || !std::isfinite(breaking_field)) {
    throw InvalidArgument("model: parameters must be finite");
  }
  if (breaking_field < 0.0) {
    throw InvalidArgument("model: breaking field must be >= 0");
  }
  switch (family) {
    case ModelFamily::xxz:
      if (hz_transverse != 0.0) throw InvalidArgument("model: hz_transverse is a TFIM parameter");
      if (breaking_field != 0.0 && !lattice.is_bipartite()) {
        throw InvalidArgument("model: staggered field on an odd periodic ring is frustrated");
      }
      break;
    case ModelFamily::tfim:
      if (delta != 0.0) throw InvalidArgument("model: delta is an XXZ parameter");
      if (hz_transverse < 0.0) throw InvalidArgument("model: hz_transverse must be >= 0");
      break;
  }
}

void Z2Symmetry::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::uint64_t dim = in.size();
  if (out.size() != dim || dim != (std::uint64_t{1} << num_sites)) {
    throw InvalidArgument("symmetry: vector dimension mismatch");
  }
  if (kind == Kind::parity) {
    for (std::uint64_t s = 0; s < dim; ++s) {
      out[s] = (std::popcount(s) & 1) ? -in[s] : in[s];
    }
  } else {
    const std::uint64_t all = dim - 1;
    for (std::uint64_t s = 0; s < dim; ++s) out[s] = in[s ^ all];
  }
}

StateVector Z2Symmetry::apply(const StateVector& v) const {
  StateVector out(v.size());
  apply(std::span<const cplx>(v.data(), v.size()), std::span<cplx>(out.data(), out.size()));
  return out;
}

HamiltonianAction::HamiltonianAction(ModelSpec spec, std::vector<double> diagonal,
                                     std::vector<FlipTerm> terms)
    : spec_(std::move(spec)), diagonal_(std::move(diagonal)), terms_(std::move(terms)) {}

void HamiltonianAction::set_threads(int threads) {
  if (threads < 1) throw InvalidArgument("hamiltonian: thread count must be >= 1");
  threads_ = threads;
}

void HamiltonianAction::apply_range(std::span<const cplx> in, std::span<cplx> out,
                                    std::uint64_t begin, std::uint64_t end) const {
  for (std::uint64_t s = begin; s < end; ++s) {
    cplx acc = diagonal_[s] * in[s];
    for (const auto& t : terms_) {
      if (t.require_differ != 0) {
        const std::uint64_t m = s & t.require_differ;
        if (m == 0 || m == t.require_differ) continue;
      }
      acc += t.amplitude * in[s ^ t.flip_mask];
    }
    out[s] = acc;
  }
}

void HamiltonianAction::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::uint64_t dim = dimension();
  if (in.size() != dim || out.size() != dim) {
    throw InvalidArgument("hamiltonian: vector dimension mismatch");
  }
  if (in.data() == out.data()) {
    throw InvalidArgument("hamiltonian: apply() cannot run in place");
  }
  const auto workers = static_cast<std::uint64_t>(threads_);
  if (workers == 1 || dim < 4096) {
    apply_range(in, out, 0, dim);
    return;
  }
  const std::uint64_t chunk = (dim + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(dim, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([this, in, out, begin, end] { apply_range(in, out, begin, end); });
  }
}

StateVector HamiltonianAction::apply(const StateVector& v) const {
  StateVector out(v.size());
  apply(std::span<const cplx>(v.data(), v.size()), std::span<cplx>(out.data(), out.size()));
  return out;
}

std::optional<Z2Symmetry> HamiltonianAction::symmetry() const {
  if (spec_.breaking_field != 0.0) return std::nullopt;
  const auto kind = spec_.family == ModelFamily::tfim ? Z2Symmetry::Kind::parity
                                                      : Z2Symmetry::Kind::spin_flip;
  return Z2Symmetry{kind, num_sites()};
}

bool HamiltonianAction::conserves_magnetization() const noexcept {
  return spec_.family == ModelFamily::xxz;
}

HamiltonianAction build_xxz(const ModelSpec& spec) {
  if (spec.family != ModelFamily::xxz) throw InvalidArgument("build_xxz: spec is not XXZ");
  spec.validate();
  const auto& lat = spec.lattice;
  const std::uint64_t dim = lat.dimension();
  const auto bonds = lat.bonds();

  std::vector<double> diag(dim, 0.0);
  for (std::uint64_t s = 0; s < dim; ++s) {
    double e = 0.0;
    for (auto [i, j] : bonds) e += spec.delta * sz_eigenvalue(s, i) * sz_eigenvalue(s, j);
    if (spec.breaking_field != 0.0) {
      for (int i = 0; i < lat.num_sites(); ++i) {
        e += spec.breaking_field * lat.sublattice_parity(i) * sz_eigenvalue(s, i);
      }
    }
    diag[s] = e;
  }

  // -(sx sx + sy sy) = -2 (s+ s- + s- s+): amplitude -2 on antiparallel pairs.
  std::vector<HamiltonianAction::FlipTerm> terms;
  for (auto [i, j] : bonds) {
    const std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    terms.push_back({mask, mask, -2.0});
  }
  return HamiltonianAction(spec, std::move(diag), std::move(terms));
}

HamiltonianAction build_tfim(const ModelSpec& spec) {
  if (spec.family != ModelFamily::tfim) throw InvalidArgument("build_tfim: spec is not TFIM");
  spec.validate();
  const auto& lat = spec.lattice;
  const std::uint64_t dim = lat.dimension();

  std::vector<double> diag(dim, 0.0);
  for (std::uint64_t s = 0; s < dim; ++s) {
    double e = 0.0;
    for (int i = 0; i < lat.num_sites(); ++i) e += spec.hz_transverse * sz_eigenvalue(s, i);
    diag[s] = e;
  }

  std::vector<HamiltonianAction::FlipTerm> terms;
  for (auto [i, j] : lat.bonds()) {
    terms.push_back({(std::uint64_t{1} << i) | (std::uint64_t{1} << j), 0, -1.0});
  }
  if (spec.breaking_field != 0.0) {
    for (int i = 0; i < lat.num_sites(); ++i) {
      terms.push_back({std::uint64_t{1} << i, 0, spec.breaking_field});
    }
  }
  return HamiltonianAction(spec, std::move(diag), std::move(terms));
}

HamiltonianAction build_hamiltonian(const ModelSpec& spec) {
  return spec.family == ModelFamily::xxz ? build_xxz(spec) : build_tfim(spec);
}

}  // namespace spinent
