#include "ultra/constructions.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>

#include "ultra/center.hpp"
#include "ultra/errors.hpp"
#include "ultra/tree.hpp"

namespace ultra {

UltrametricSpace binary_word_space(unsigned n, std::size_t point_budget) {
  if (n == 0) throw DomainError("binary word length must be at least 1");
  if (n >= 63 || (std::size_t{1} << n) > point_budget) {
    throw ResourceError("binary_word_space(" + std::to_string(n) + ") exceeds the point budget of " +
                        std::to_string(point_budget) + " points");
  }
  const std::size_t count = std::size_t{1} << n;
  SpaceData data;
  data.points.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    std::string name(n, '0');
    for (unsigned b = 0; b < n; ++b) {
      if (w & (std::size_t{1} << (n - 1 - b))) name[b] = '1';
    }
    data.points.push_back(std::move(name));
  }
  data.matrix.assign(count, std::vector<Rational>(count, Rational(0)));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      // First differing position p (1-based from the left) gives 2^(-p).
      const unsigned highest = static_cast<unsigned>(std::bit_width(i ^ j)) - 1;
      const unsigned p = n - highest;
      data.matrix[i][j] = Rational(1, std::int64_t{1} << p);
      data.matrix[j][i] = data.matrix[i][j];
    }
  }
  return UltrametricSpace::unchecked(std::move(data));
}

UltrametricSpace double_space(const UltrametricSpace& base, const Rational& t_star) {
  const Rational diam = diameter(base);
  if (!(t_star > diam)) {
    throw DomainError("cross distance " + t_star.str() + " must exceed diam(base) = " +
                      diam.str());
  }
  const std::size_t n = base.size();
  SpaceData data;
  data.points.reserve(2 * n);
  for (std::size_t copy = 0; copy < 2; ++copy) {
    for (std::size_t i = 0; i < n; ++i) {
      data.points.push_back(base.point(i) + (copy == 0 ? "·0" : "·1"));
    }
  }
  data.matrix.assign(2 * n, std::vector<Rational>(2 * n, t_star));
  for (std::size_t copy = 0; copy < 2; ++copy) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        data.matrix[copy * n + i][copy * n + j] = base.distance(i, j);
      }
    }
  }
  return UltrametricSpace::unchecked(std::move(data));
}

UltrametricSpace add_point(const UltrametricSpace& base) {
  if (base.size() < 2) throw DomainError("add_point needs a base space with at least two points");

  const RepresentingTree tree = build_representing_tree(base);
  const LabeledTree& skeleton = tree.skeleton();

  // Attachment node: deepest internal node with a leaf child; ties broken by
  // canonical subtree encoding, then by smallest represented point index.
  const auto encodings = node_encodings(skeleton, SimilarityMode::Isometry);
  int v0 = -1;
  for (int v = 0; v < static_cast<int>(skeleton.nodes.size()); ++v) {
    if (skeleton.is_leaf(v)) continue;
    bool has_leaf_child = false;
    for (int c : skeleton.nodes[v].children) has_leaf_child |= skeleton.is_leaf(c);
    if (!has_leaf_child) continue;
    if (v0 == -1) {
      v0 = v;
      continue;
    }
    const auto rank = [&](int u) {
      return std::make_tuple(-tree.depths()[u], encodings[static_cast<std::size_t>(u)],
                             tree.members()[static_cast<std::size_t>(u)].front());
    };
    if (rank(v) < rank(v0)) v0 = v;
  }

  // Distances of the new point: l(v0) to everything below v0, and the
  // existing distance to v0's subtree for everything else (shared ancestor).
  std::string name = "v*";
  while (base.index_of(name)) name += "*";
  const std::size_t n = base.size();
  const auto& members = tree.members()[static_cast<std::size_t>(v0)];
  std::vector<char> below(n, 0);
  for (std::size_t m : members) below[m] = 1;
  const std::size_t witness = members.front();
  const Rational& v0_label = skeleton.nodes[v0].label;

  SpaceData data = base.data();
  data.points.push_back(name);
  std::vector<Rational> new_row;
  new_row.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    new_row.push_back(below[i] ? v0_label : base.distance(i, witness));
  }
  for (std::size_t i = 0; i < n; ++i) data.matrix[i].push_back(new_row[i]);
  new_row.push_back(Rational(0));
  data.matrix.push_back(std::move(new_row));
  return UltrametricSpace::unchecked(std::move(data));
}

UltrametricSpace realize_center_set(const DistanceSet& target, std::size_t point_budget) {
  if (target.empty() || !target.values().front().is_zero()) {
    throw DomainError("the target set must contain 0");
  }
  const std::size_t m = target.size() - 1;
  if (m >= 63 || (std::size_t{1} << m) > point_budget) {
    throw ResourceError("realize_center_set needs 2^" + std::to_string(m) +
                        " points, beyond the budget of " + std::to_string(point_budget));
  }
  const std::size_t count = std::size_t{1} << m;
  const auto& values = target.values();

  SpaceData data;
  data.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) data.points.push_back("x" + std::to_string(i + 1));
  data.matrix.assign(count, std::vector<Rational>(count, Rational(0)));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      // Perfect binary tree: leaves split first at depth m - bit_width(i^j),
      // whose label is the bit_width(i^j)-th smallest positive value.
      const std::size_t rank = static_cast<std::size_t>(std::bit_width(i ^ j));
      data.matrix[i][j] = values[rank];
      data.matrix[j][i] = values[rank];
    }
  }
  UltrametricSpace space = UltrametricSpace::unchecked(std::move(data));

  if (distance_set(space) != target || center_bruteforce(space) != target) {
    throw InternalError("realize_center_set postcondition failed for target " + target.str());
  }
  return space;
}

UltrametricSpace scale(const UltrametricSpace& space, const Rational& factor) {
  if (factor.is_zero()) throw DomainError("scale factor must be positive");
  SpaceData data = space.data();
  for (auto& row : data.matrix) {
    for (auto& value : row) value = value * factor;
  }
  return UltrametricSpace::unchecked(std::move(data));
}

UltrametricSpace build(const ConstructionSpec& spec, std::size_t point_budget) {
  switch (spec.kind) {
    case ConstructionSpec::Kind::BinaryWord:
      return binary_word_space(spec.n, point_budget);
    case ConstructionSpec::Kind::Double: {
      if (!spec.base || !spec.t_star) throw StructuralError("double needs a base space and t_star");
      return double_space(UltrametricSpace::create(*spec.base), *spec.t_star);
    }
    case ConstructionSpec::Kind::AddPoint: {
      if (!spec.base) throw StructuralError("add_point needs a base space");
      return add_point(UltrametricSpace::create(*spec.base));
    }
    case ConstructionSpec::Kind::RealizeSet:
      return realize_center_set(DistanceSet::of(spec.target_set), point_budget);
  }
  throw StructuralError("unknown construction kind");
}

}  // namespace ultra
