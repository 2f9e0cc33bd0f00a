#include "ultra/center.hpp"

#include <bit>
#include <map>

#include "ultra/errors.hpp"
#include "ultra/partition.hpp"

namespace ultra {

DistanceSet center_bruteforce(const UltrametricSpace& space) {
  DistanceSet result = distance_set(space, 0);
  for (std::size_t p = 1; p < space.size(); ++p) {
    result = result.intersect(distance_set(space, p));
  }
  return result;
}

namespace {

DistanceSet center_recursive_impl(const UltrametricSpace& space,
                                  std::map<std::string, DistanceSet>& memo) {
  if (space.size() == 1) return DistanceSet::of({Rational(0)});

  const std::string key = canonical_form(build_representing_tree(space), SimilarityMode::Isometry);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const Partition partition = diametrical_partition(space);
  DistanceSet meet;
  bool first = true;
  for (const auto& part : partition.parts) {
    DistanceSet part_center = part.size() == 1
                                  ? DistanceSet::of({Rational(0)})
                                  : center_recursive_impl(induced(space, part), memo);
    meet = first ? std::move(part_center) : meet.intersect(part_center);
    first = false;
  }
  DistanceSet result = meet.unite(DistanceSet::of({partition.separation}));
  memo.emplace(key, result);
  return result;
}

}  // namespace

DistanceSet center_recursive(const UltrametricSpace& space) {
  if (space.size() == 1) return DistanceSet::of({Rational(0)});
  std::map<std::string, DistanceSet> memo;
  return center_recursive_impl(space, memo);
}

DistanceSet center_from_tree(const RepresentingTree& tree) {
  const LabeledTree& skeleton = tree.skeleton();
  DistanceSet result;
  bool first = true;
  for (int leaf : skeleton.leaves()) {
    std::vector<Rational> labels;
    for (int v = leaf; v != -1; v = skeleton.nodes[v].parent) labels.push_back(skeleton.nodes[v].label);
    DistanceSet path_set = DistanceSet::of(std::move(labels));
    result = first ? std::move(path_set) : result.intersect(path_set);
    first = false;
  }
  return result;
}

CenterReport center_report(const UltrametricSpace& space) {
  CenterReport report;
  report.n = space.size();
  report.bound = static_cast<std::size_t>(std::bit_width(space.size()));
  report.distance_set = distance_set(space);
  for (std::size_t p = 0; p < space.size(); ++p) {
    report.per_point.emplace_back(space.point(p), distance_set(space, p));
  }
  report.center = report.per_point.front().second;
  for (std::size_t p = 1; p < space.size(); ++p) {
    report.center = report.center.intersect(report.per_point[p].second);
  }
  report.lower_floor = DistanceSet::of({Rational(0), diameter(space)});

  if (!report.center.is_subset_of(report.distance_set)) {
    throw InternalError("center report: C(X) is not a subset of D(X)");
  }
  if (!report.lower_floor.is_subset_of(report.center)) {
    throw InternalError("center report: {0, diam X} is not contained in C(X)");
  }
  if (report.center.size() > report.bound) {
    throw InternalError("center report: |C(X)| = " + std::to_string(report.center.size()) +
                        " exceeds the bound 1 + floor(log2 n) = " + std::to_string(report.bound));
  }
  const std::size_t m = report.center.size();
  if (m >= 1 && space.size() < (static_cast<std::size_t>(1) << (m - 1))) {
    throw InternalError("center report: |X| = " + std::to_string(space.size()) +
                        " is below the dual floor 2^(|C|-1) = " +
                        std::to_string(static_cast<std::size_t>(1) << (m - 1)));
  }
  return report;
}

}  // namespace ultra
