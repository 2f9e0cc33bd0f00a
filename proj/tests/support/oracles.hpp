#pragma once

#include <set>
#include <vector>

#include "ultra/distance_set.hpp"
#include "ultra/space.hpp"
#include "ultra/tree.hpp"

namespace ultra::testing {

/// Literal reading of the definition of the center: every t in D(X) such
/// that d(p, x) = t is solvable for each p. Independent of the per-point-set
/// intersection route in the library.
DistanceSet center_by_definition(const UltrametricSpace& space);

/// Exhaustive search over all |X|! point bijections for an isometry or weak
/// similarity. Only usable for small spaces; this is the ground truth that
/// canonical-form equality is tested against.
bool bijection_similarity_exists(const UltrametricSpace& x, const UltrametricSpace& y,
                                 SimilarityMode mode);

/// A permutation- and rescaling-invariant key for a space: the minimum over
/// all point orders of the rank-normalized upper triangle.
std::vector<int> min_perm_rank_key(const UltrametricSpace& space);

/// Ground truth for enumeration completeness at desk scale: every n-point
/// ultrametric matrix over the value alphabet {1..n-1}, quotiented by weak
/// similarity via min_perm_rank_key. Returns the canonical key set.
std::set<std::vector<int>> matrix_oracle_class_keys(std::size_t n);

}  // namespace ultra::testing
