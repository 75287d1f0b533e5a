#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace spinent {

enum class Boundary { periodic, open };

/// A one dimensional chain of spin-1/2 sites.
///
/// Site i owns bit i of a basis-state index. The chain is two-colored with
/// site 0 on the + sublattice.
class LatticeSpec {
 public:
  static constexpr int kMaxSites = 26;

  LatticeSpec(int num_sites, Boundary boundary);

  int num_sites() const noexcept { return num_sites_; }
  Boundary boundary() const noexcept { return boundary_; }
  std::uint64_t dimension() const noexcept { return std::uint64_t{1} << num_sites_; }

  /// (-1)^i
  int sublattice_parity(int site) const;

  /// Nearest-neighbour bonds, each listed once. A periodic two-site ring has
  /// a single bond.
  std::vector<std::pair<int, int>> bonds() const;

  /// True when the periodic ring can be two-colored (N even) or the chain is open.
  bool is_bipartite() const noexcept;

 private:
  int num_sites_;
  Boundary boundary_;
};

}  // namespace spinent
