#include "ultra/partition.hpp"

#include <algorithm>

#include "ultra/errors.hpp"

namespace ultra {

namespace detail {

std::vector<std::vector<std::size_t>> partition_subset(const UltrametricSpace& space,
                                                       std::span<const std::size_t> subset,
                                                       const Rational& subset_diameter) {
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t p : subset) {
    bool placed = false;
    for (auto& part : parts) {
      if (space.distance(p, part.front()) < subset_diameter) {
        part.push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed) parts.push_back({p});
  }

  // The single-representative scan above is only sound because d(u,v) < diam
  // is an equivalence; re-check the full invariant and fail loudly otherwise.
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t u : parts[a]) {
      for (std::size_t b = a; b < parts.size(); ++b) {
        for (std::size_t v : parts[b]) {
          if (u == v) continue;
          const bool same_part = (a == b);
          const bool close = space.distance(u, v) < subset_diameter;
          if (same_part != close) {
            throw InternalError("diametrical partition invariant breached between '" +
                                space.point(u) + "' and '" + space.point(v) +
                                "' (grouping relation not transitive; the space is not "
                                "ultrametric or there is a bug)");
          }
        }
      }
    }
  }
  return parts;
}

}  // namespace detail

Partition diametrical_partition(const UltrametricSpace& space) {
  if (space.size() < 2) {
    throw DomainError("diametrical graph is undefined for fewer than two points");
  }
  std::vector<std::size_t> all(space.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Partition partition;
  partition.separation = diameter(space);
  partition.parts = detail::partition_subset(space, all, partition.separation);
  return partition;
}

bool is_complete_multipartite_certificate(const UltrametricSpace& space,
                                          const std::vector<std::vector<std::size_t>>& parts) {
  std::vector<int> owner(space.size(), -1);
  std::size_t covered = 0;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    if (parts[a].empty()) throw DomainError("partition contains an empty part");
    for (std::size_t p : parts[a]) {
      if (p >= space.size() || owner[p] != -1) {
        throw DomainError("partition does not cover the point set exactly");
      }
      owner[p] = static_cast<int>(a);
      ++covered;
    }
  }
  if (covered != space.size()) throw DomainError("partition does not cover the point set exactly");

  const Rational diam = diameter(space);
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      const bool same = owner[i] == owner[j];
      if (same && space.distance(i, j) >= diam) return false;
      if (!same && space.distance(i, j) != diam) return false;
    }
  }
  return true;
}

}  // namespace ultra
