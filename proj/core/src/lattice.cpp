#include "spinent/lattice.hpp"

#include <string>

#include "spinent/error.hpp"

namespace spinent {

LatticeSpec::LatticeSpec(int num_sites, Boundary boundary)
    : num_sites_(num_sites), boundary_(boundary) {
  if (num_sites < 1 || num_sites > kMaxSites) {
    throw InvalidArgument("lattice: number of sites must be in [1, " +
                          std::to_string(kMaxSites) + "], got " +
                          std::to_string(num_sites));
  }
}

int LatticeSpec::sublattice_parity(int site) const {
  if (site < 0 || site >= num_sites_) {
    throw InvalidArgument("lattice: site " + std::to_string(site) + " out of range");
  }
  return site % 2 == 0 ? 1 : -1;
}

std::vector<std::pair<int, int>> LatticeSpec::bonds() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < num_sites_; ++i) out.emplace_back(i, i + 1);
  if (boundary_ == Boundary::periodic && num_sites_ > 2) out.emplace_back(num_sites_ - 1, 0);
  return out;
}

bool LatticeSpec::is_bipartite() const noexcept {
  return boundary_ == Boundary::open || num_sites_ % 2 == 0;
}

}  // namespace spinent
