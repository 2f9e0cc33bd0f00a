#pragma once

#include <span>
#include <vector>

#include "ultra/space.hpp"

namespace ultra {

/// The parts of the diametrical graph: a complete multipartite structure in
/// which any two points of different parts sit at distance `separation`
/// (= diam X) and any two points of one part sit strictly closer.
struct Partition {
  std::vector<std::vector<std::size_t>> parts;  // ordered by smallest member index
  Rational separation;
};

/// Splits the space into the parts of its diametrical graph. Requires at
/// least two points. The grouping relation d(u,v) < diam X is transitive on
/// every ultrametric space; the result is re-checked against the full
/// multipartite invariant and an InternalError signals any breach (a bug,
/// since inputs are validated spaces).
Partition diametrical_partition(const UltrametricSpace& space);

/// Independent verifier: true iff `parts` covers the point set with all
/// cross-part distances equal to diam X and all within-part distances
/// strictly smaller. A non-cover is a domain error.
bool is_complete_multipartite_certificate(const UltrametricSpace& space,
                                          const std::vector<std::vector<std::size_t>>& parts);

namespace detail {
/// Diametrical parts of an induced subset, used by the tree builder without
/// materializing subspaces. `subset` must be sorted ascending.
std::vector<std::vector<std::size_t>> partition_subset(const UltrametricSpace& space,
                                                       std::span<const std::size_t> subset,
                                                       const Rational& subset_diameter);
}  // namespace detail

}  // namespace ultra
