#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ultra/tree.hpp"

namespace ultra {

/// C(X) as the intersection of the per-point distance sets D_p(X).
/// A one-point space has center {0}.
DistanceSet center_bruteforce(const UltrametricSpace& space);

/// C(X) by recursion over the diametrical partition:
/// C(X) = {diam X} ∪ (∩ C(X_i)), singleton parts contributing {0}.
/// Isometric parts are computed once per call via canonical-encoding
/// memoization; results are identical with or without the cache.
DistanceSet center_recursive(const UltrametricSpace& space);

/// C(X) from the representing tree: intersection over all leaves of the
/// label sets along each leaf-to-root path (leaf label 0 included).
DistanceSet center_from_tree(const RepresentingTree& tree);

/// Everything the bound theorems talk about, computed in one pass.
struct CenterReport {
  DistanceSet center;
  DistanceSet distance_set;
  std::vector<std::pair<std::string, DistanceSet>> per_point;  // declared order
  std::size_t n = 0;
  std::size_t bound = 0;        // 1 + floor(log2 n)
  DistanceSet lower_floor;      // {0, diam X}
};

/// Populates a CenterReport and asserts every structural bound before
/// returning: center ⊆ D(X), {0, diam X} ⊆ center, |center| ≤ 1+⌊log₂n⌋ and
/// n ≥ 2^{|center|−1}. A breach raises InternalError naming the bound; it
/// signals an implementation bug, never bad input.
CenterReport center_report(const UltrametricSpace& space);

}  // namespace ultra
