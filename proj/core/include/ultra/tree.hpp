#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultra/space.hpp"

namespace ultra {

/// A rooted tree with a nonnegative rational label per vertex, stored as
/// index-based adjacency (children + parent arrays) so traversals and
/// canonicalization stay iterative. Candidate input trees use this shape
/// too; leaves may optionally carry a point name.
struct LabeledTree {
  struct Node {
    Rational label;
    std::vector<int> children;
    int parent = -1;
    std::string point;  // leaf point name; empty when unnamed
  };

  std::vector<Node> nodes;
  int root = 0;

  bool is_leaf(int v) const { return nodes[v].children.empty(); }
  int out_degree(int v) const { return static_cast<int>(nodes[v].children.size()); }
  std::size_t leaf_count() const;
  /// Leaves in depth-first order following stored child order.
  std::vector<int> leaves() const;
  int depth(int v) const;
};

enum class TreeClause {
  OutDegreeOne,        // some vertex has exactly one child
  LeafLabelMismatch,   // zero labels and leaves do not coincide
  LabelNotDecreasing,  // a child label is not strictly below its parent's
};

struct TreeViolation {
  TreeClause clause;
  int vertex;
  std::string message;
};

struct TreeValidation {
  bool valid = false;
  std::vector<TreeViolation> violations;
};

/// Checks the three clauses characterizing representing trees: no vertex of
/// out-degree one, label zero exactly at leaves, labels strictly decreasing
/// from parent to child. Structural defects (cycles, disconnection, bad
/// indices) raise StructuralError; fewer than three vertices is a domain
/// error (two-point spaces still yield three-vertex trees).
TreeValidation validate_tree(const LabeledTree& tree);

/// The representing tree of a space: recursive diametrical partitioning,
/// each node labeled with the diameter of the point subset it represents.
/// Leaves are singletons labeled 0 and named after their points.
class RepresentingTree {
 public:
  const LabeledTree& skeleton() const { return tree_; }
  const std::vector<std::vector<std::size_t>>& members() const { return members_; }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<int>& depths() const { return depths_; }
  int root() const { return tree_.root; }

 private:
  friend RepresentingTree build_representing_tree(const UltrametricSpace& space);

  LabeledTree tree_;
  std::vector<std::vector<std::size_t>> members_;  // per node, sorted point indices
  std::vector<std::string> points_;                // the space's points, declared order
  std::vector<int> depths_;
};

/// Requires at least two points.
RepresentingTree build_representing_tree(const UltrametricSpace& space);

enum class SimilarityMode { Isometry, WeakSimilarity };

/// Canonical encoding of a valid labeled rooted tree: equal strings in
/// Isometry mode iff the trees are isomorphic as labeled rooted trees, with
/// exact label comparison. WeakSimilarity mode first replaces every label by
/// its ascending rank within the tree's label set, making the encoding
/// invariant under strictly increasing rescalings. Child order and point
/// names never affect the encoding.
std::string canonical_form(const LabeledTree& tree, SimilarityMode mode);
std::string canonical_form(const RepresentingTree& tree, SimilarityMode mode);

/// The canonical encoding of every subtree, indexed by vertex. Computed the
/// same way as canonical_form but without the validity gate; useful for
/// deterministic tie-breaking among subtrees.
std::vector<std::string> node_encodings(const LabeledTree& tree, SimilarityMode mode);

/// Builds the space a valid tree represents: one point per leaf, distance of
/// two leaves = the largest label on the path joining them. Point order is
/// the canonical traversal (children ordered by encoding). Names come from
/// `leaf_names` when given, otherwise from the leaves' own point names,
/// otherwise x1, x2, ...
UltrametricSpace realize_space(const LabeledTree& tree,
                               std::optional<std::vector<std::string>> leaf_names = std::nullopt);

/// A verified weak similarity (or isometry) between two spaces: the point
/// bijection plus the increasing distance correspondence. scale_map pairs
/// are (value in X, matching value in Y).
struct SimilarityWitness {
  std::vector<std::pair<std::string, std::string>> point_bijection;
  std::vector<std::pair<Rational, Rational>> scale_map;
};

/// Decides isometry / weak similarity through canonical forms and, on a
/// match, reconstructs a witness from the canonical matching. Every returned
/// witness has been checked pair-by-pair against both matrices.
std::optional<SimilarityWitness> find_similarity(const UltrametricSpace& x,
                                                 const UltrametricSpace& y, SimilarityMode mode);

}  // namespace ultra
