#pragma once

#include <string>
#include <vector>

#include "ultra/rational.hpp"

namespace ultra {

/// A strictly increasing set of distance values. D(X), the per-point sets
/// D_p(X) and every center of distances are carried as DistanceSets.
class DistanceSet {
 public:
  DistanceSet() = default;

  /// Sorts and deduplicates.
  static DistanceSet of(std::vector<Rational> values);

  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(const Rational& value) const;

  DistanceSet intersect(const DistanceSet& other) const;
  DistanceSet unite(const DistanceSet& other) const;
  bool is_subset_of(const DistanceSet& other) const;

  /// "{0, 1/2, 3}"
  std::string str() const;

  friend bool operator==(const DistanceSet&, const DistanceSet&) = default;

 private:
  std::vector<Rational> values_;
};

}  // namespace ultra
