#include "ultra/distance_set.hpp"

#include <algorithm>

namespace ultra {

DistanceSet DistanceSet::of(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  DistanceSet set;
  set.values_ = std::move(values);
  return set;
}

bool DistanceSet::contains(const Rational& value) const {
  return std::binary_search(values_.begin(), values_.end(), value);
}

DistanceSet DistanceSet::intersect(const DistanceSet& other) const {
  DistanceSet result;
  std::set_intersection(values_.begin(), values_.end(), other.values_.begin(),
                        other.values_.end(), std::back_inserter(result.values_));
  return result;
}

DistanceSet DistanceSet::unite(const DistanceSet& other) const {
  DistanceSet result;
  std::set_union(values_.begin(), values_.end(), other.values_.begin(), other.values_.end(),
                 std::back_inserter(result.values_));
  return result;
}

bool DistanceSet::is_subset_of(const DistanceSet& other) const {
  return std::includes(other.values_.begin(), other.values_.end(), values_.begin(),
                       values_.end());
}

std::string DistanceSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > 0) out += ", ";
    out += values_[i].str();
  }
  out += "}";
  return out;
}

}  // namespace ultra
