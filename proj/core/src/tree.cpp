#include "ultra/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ultra/errors.hpp"
#include "ultra/partition.hpp"

namespace ultra {

namespace {

// Post-order over an explicit stack; trees can be deep.
template <typename Visit>
void post_order(const LabeledTree& tree, Visit&& visit) {
  std::vector<std::pair<int, std::size_t>> stack;
  stack.emplace_back(tree.root, 0);
  while (!stack.empty()) {
    auto& [node, next_child] = stack.back();
    if (next_child < tree.nodes[node].children.size()) {
      int child = tree.nodes[node].children[next_child++];
      stack.emplace_back(child, 0);
    } else {
      visit(node);
      stack.pop_back();
    }
  }
}

void check_structure(const LabeledTree& tree) {
  const int n = static_cast<int>(tree.nodes.size());
  if (n == 0) throw StructuralError("empty tree");
  if (tree.root < 0 || tree.root >= n) throw StructuralError("root index out of range");
  std::vector<int> seen_parent(static_cast<std::size_t>(n), -2);
  for (int v = 0; v < n; ++v) {
    for (int c : tree.nodes[v].children) {
      if (c < 0 || c >= n) throw StructuralError("child index out of range");
      if (c == tree.root) throw StructuralError("root listed as a child: the graph has a cycle");
      if (seen_parent[c] != -2) throw StructuralError("vertex " + std::to_string(c) +
                                                      " has two parents: not a tree");
      seen_parent[c] = v;
    }
  }
  if (tree.nodes[tree.root].parent != -1) {
    throw StructuralError("the root must not have a parent link");
  }
  for (int v = 0; v < n; ++v) {
    if (v == tree.root) continue;
    if (seen_parent[v] == -2) throw StructuralError("vertex " + std::to_string(v) +
                                                    " is unreachable: not a connected tree");
    if (tree.nodes[v].parent != seen_parent[v]) {
      throw StructuralError("parent link of vertex " + std::to_string(v) +
                            " is missing or contradicts the child lists");
    }
  }
  // Reachability from the root; together with the single-parent check this
  // certifies |V| = 1 + |E| on a connected graph.
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<int> stack = {tree.root};
  int count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (visited[v]) throw StructuralError("cycle detected");
    visited[v] = 1;
    ++count;
    for (int c : tree.nodes[v].children) stack.push_back(c);
  }
  if (count != n) throw StructuralError("tree is disconnected");
}

std::vector<std::string> encode_nodes(const LabeledTree& tree, SimilarityMode mode) {
  // Token per node: the exact label, or its rank within the tree's label set.
  std::vector<std::string> tokens(tree.nodes.size());
  if (mode == SimilarityMode::WeakSimilarity) {
    std::vector<Rational> labels;
    labels.reserve(tree.nodes.size());
    for (const auto& node : tree.nodes) labels.push_back(node.label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
      auto it = std::lower_bound(labels.begin(), labels.end(), tree.nodes[v].label);
      tokens[v] = std::to_string(it - labels.begin());
    }
  } else {
    for (std::size_t v = 0; v < tree.nodes.size(); ++v) tokens[v] = tree.nodes[v].label.str();
  }

  std::vector<std::string> enc(tree.nodes.size());
  post_order(tree, [&](int v) {
    if (tree.is_leaf(v)) {
      enc[v] = "(" + tokens[v] + ")";
      return;
    }
    std::vector<std::string> parts;
    parts.reserve(tree.nodes[v].children.size());
    for (int c : tree.nodes[v].children) parts.push_back(enc[c]);
    std::sort(parts.begin(), parts.end());
    std::string out = "(" + tokens[v] + ";";
    for (const auto& part : parts) out += part;
    out += ")";
    enc[v] = std::move(out);
  });
  return enc;
}

void require_valid(const LabeledTree& tree) {
  TreeValidation report = validate_tree(tree);
  if (!report.valid) {
    std::string message = "tree fails the representing-tree conditions:";
    for (const auto& v : report.violations) message += " [" + v.message + "]";
    throw DomainError(message);
  }
}

}  // namespace

std::size_t LabeledTree::leaf_count() const {
  std::size_t count = 0;
  for (const auto& node : nodes) count += node.children.empty() ? 1 : 0;
  return count;
}

std::vector<int> LabeledTree::leaves() const {
  std::vector<int> out;
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (is_leaf(v)) {
      out.push_back(v);
      continue;
    }
    for (auto it = nodes[v].children.rbegin(); it != nodes[v].children.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return out;
}

int LabeledTree::depth(int v) const {
  int d = 0;
  while (v != root) {
    v = nodes[v].parent;
    ++d;
  }
  return d;
}

TreeValidation validate_tree(const LabeledTree& tree) {
  check_structure(tree);
  if (tree.nodes.size() < 3) {
    throw DomainError("representing-tree conditions apply to trees with at least 3 vertices");
  }
  TreeValidation report;
  for (int v = 0; v < static_cast<int>(tree.nodes.size()); ++v) {
    const auto& node = tree.nodes[v];
    const int out = tree.out_degree(v);
    if (out == 1) {
      report.violations.push_back(
          {TreeClause::OutDegreeOne, v, "vertex " + std::to_string(v) + " has out-degree 1"});
    }
    const bool is_leaf = out == 0;
    const bool zero = node.label.is_zero();
    if (is_leaf != zero) {
      report.violations.push_back(
          {TreeClause::LeafLabelMismatch, v,
           is_leaf ? "leaf " + std::to_string(v) + " has nonzero label " + node.label.str()
                   : "internal vertex " + std::to_string(v) + " has label 0"});
    }
    for (int c : node.children) {
      if (!(tree.nodes[c].label < node.label)) {
        report.violations.push_back({TreeClause::LabelNotDecreasing, c,
                                     "label " + tree.nodes[c].label.str() + " of vertex " +
                                         std::to_string(c) + " is not below its parent's " +
                                         node.label.str()});
      }
    }
  }
  report.valid = report.violations.empty();
  return report;
}

RepresentingTree build_representing_tree(const UltrametricSpace& space) {
  if (space.size() < 2) {
    throw DomainError("representing trees are defined for spaces with at least two points");
  }
  RepresentingTree result;
  result.points_ = space.points();

  std::vector<std::size_t> all(space.size());
  std::iota(all.begin(), all.end(), 0);

  // Work queue of (node id, members); children are appended in part order,
  // parts ordered by smallest contained point index.
  result.tree_.nodes.push_back({});
  result.members_.push_back(std::move(all));
  result.depths_.push_back(0);
  result.tree_.root = 0;

  std::vector<int> queue = {0};
  std::size_t head = 0;
  while (head < queue.size()) {
    const int v = queue[head++];
    const auto& members = result.members_[v];
    if (members.size() == 1) {
      result.tree_.nodes[v].label = 0;
      result.tree_.nodes[v].point = space.point(members.front());
      continue;
    }
    const Rational diam = diameter(space, members);
    result.tree_.nodes[v].label = diam;
    auto parts = detail::partition_subset(space, members, diam);
    for (auto& part : parts) {
      const int child = static_cast<int>(result.tree_.nodes.size());
      result.tree_.nodes.push_back({});
      result.tree_.nodes[child].parent = v;
      result.tree_.nodes[v].children.push_back(child);
      result.members_.push_back(std::move(part));
      result.depths_.push_back(result.depths_[v] + 1);
      queue.push_back(child);
    }
  }
  return result;
}

std::string canonical_form(const LabeledTree& tree, SimilarityMode mode) {
  require_valid(tree);
  return encode_nodes(tree, mode)[static_cast<std::size_t>(tree.root)];
}

std::vector<std::string> node_encodings(const LabeledTree& tree, SimilarityMode mode) {
  check_structure(tree);
  return encode_nodes(tree, mode);
}

std::string canonical_form(const RepresentingTree& tree, SimilarityMode mode) {
  return canonical_form(tree.skeleton(), mode);
}

UltrametricSpace realize_space(const LabeledTree& tree,
                               std::optional<std::vector<std::string>> leaf_names) {
  require_valid(tree);

  // Canonical traversal: children ordered by their exact-label encoding,
  // ties by stored index, so the realized point order is deterministic no
  // matter how the input listed its children.
  const auto enc = encode_nodes(tree, SimilarityMode::Isometry);
  std::vector<int> leaf_order;
  std::vector<std::pair<int, std::size_t>> stack;
  stack.emplace_back(tree.root, 0);
  std::vector<std::vector<int>> ordered_children(tree.nodes.size());
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    ordered_children[v] = tree.nodes[v].children;
    std::sort(ordered_children[v].begin(), ordered_children[v].end(),
              [&](int a, int b) { return std::tie(enc[a], a) < std::tie(enc[b], b); });
  }
  while (!stack.empty()) {
    auto& [node, next_child] = stack.back();
    if (tree.is_leaf(node)) {
      leaf_order.push_back(node);
      stack.pop_back();
      continue;
    }
    if (next_child < ordered_children[node].size()) {
      int child = ordered_children[node][next_child++];
      stack.emplace_back(child, 0);
    } else {
      stack.pop_back();
    }
  }

  const std::size_t n = leaf_order.size();
  std::vector<std::string> names;
  if (leaf_names) {
    if (leaf_names->size() != n) {
      throw DomainError("leaf_names has " + std::to_string(leaf_names->size()) +
                        " entries for " + std::to_string(n) + " leaves");
    }
    names = std::move(*leaf_names);
  } else {
    bool all_named = true;
    for (int leaf : leaf_order) all_named = all_named && !tree.nodes[leaf].point.empty();
    if (all_named) {
      for (int leaf : leaf_order) names.push_back(tree.nodes[leaf].point);
    } else {
      for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    }
  }

  // d(x, y) = max label on the joining path = label of the lowest common
  // ancestor, since labels strictly decrease toward the leaves.
  std::vector<int> depth(tree.nodes.size(), 0);
  for (int v : leaf_order) {
    int u = v;
    int d = 0;
    while (u != tree.root) {
      u = tree.nodes[u].parent;
      ++d;
    }
    depth[v] = d;
  }
  SpaceData data;
  data.points = std::move(names);
  data.matrix.assign(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      int u = leaf_order[a];
      int v = leaf_order[b];
      int du = depth[u];
      int dv = depth[v];
      while (du > dv) {
        u = tree.nodes[u].parent;
        --du;
      }
      while (dv > du) {
        v = tree.nodes[v].parent;
        --dv;
      }
      while (u != v) {
        u = tree.nodes[u].parent;
        v = tree.nodes[v].parent;
      }
      data.matrix[a][b] = tree.nodes[u].label;
      data.matrix[b][a] = data.matrix[a][b];
    }
  }
  return UltrametricSpace::unchecked(std::move(data));
}

namespace {

// Pairs up leaves of two canonically-equal trees by matching children with
// equal encodings in sorted order.
void match_leaves(const LabeledTree& tx, const std::vector<std::string>& enc_x, int u,
                  const LabeledTree& ty, const std::vector<std::string>& enc_y, int v,
                  std::vector<std::pair<int, int>>& out) {
  if (tx.is_leaf(u)) {
    out.emplace_back(u, v);
    return;
  }
  auto sorted_by_enc = [](const std::vector<int>& children, const std::vector<std::string>& enc) {
    std::vector<int> order = children;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::tie(enc[a], a) < std::tie(enc[b], b); });
    return order;
  };
  const auto cx = sorted_by_enc(tx.nodes[u].children, enc_x);
  const auto cy = sorted_by_enc(ty.nodes[v].children, enc_y);
  for (std::size_t i = 0; i < cx.size(); ++i) {
    match_leaves(tx, enc_x, cx[i], ty, enc_y, cy[i], out);
  }
}

}  // namespace

std::optional<SimilarityWitness> find_similarity(const UltrametricSpace& x,
                                                 const UltrametricSpace& y, SimilarityMode mode) {
  if (x.size() != y.size()) return std::nullopt;
  if (x.size() == 1) {
    SimilarityWitness witness;
    witness.point_bijection.emplace_back(x.point(0), y.point(0));
    witness.scale_map.emplace_back(Rational(0), Rational(0));
    return witness;
  }

  const RepresentingTree tx = build_representing_tree(x);
  const RepresentingTree ty = build_representing_tree(y);
  if (canonical_form(tx, mode) != canonical_form(ty, mode)) return std::nullopt;

  const auto enc_x = encode_nodes(tx.skeleton(), mode);
  const auto enc_y = encode_nodes(ty.skeleton(), mode);
  std::vector<std::pair<int, int>> leaf_pairs;
  match_leaves(tx.skeleton(), enc_x, tx.root(), ty.skeleton(), enc_y, ty.root(), leaf_pairs);

  SimilarityWitness witness;
  std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
  for (auto [u, v] : leaf_pairs) {
    const std::string& px = tx.skeleton().nodes[u].point;
    const std::string& py = ty.skeleton().nodes[v].point;
    witness.point_bijection.emplace_back(px, py);
    index_pairs.emplace_back(*x.index_of(px), *y.index_of(py));
  }

  const auto dx = distance_set(x).values();
  const auto dy = distance_set(y).values();
  if (dx.size() != dy.size()) {
    throw InternalError("canonical forms matched but |D(X)| != |D(Y)|");
  }
  for (std::size_t i = 0; i < dx.size(); ++i) witness.scale_map.emplace_back(dx[i], dy[i]);
  if (mode == SimilarityMode::Isometry && dx != dy) {
    throw InternalError("isometry canonical forms matched but distance sets differ");
  }

  // Verify the witness against both matrices before handing it out.
  std::map<Rational, Rational> y_to_x;
  for (const auto& [vx, vy] : witness.scale_map) y_to_x.emplace(vy, vx);
  for (std::size_t a = 0; a < index_pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < index_pairs.size(); ++b) {
      const Rational& dxv = x.distance(index_pairs[a].first, index_pairs[b].first);
      const Rational& dyv = y.distance(index_pairs[a].second, index_pairs[b].second);
      auto it = y_to_x.find(dyv);
      if (it == y_to_x.end() || it->second != dxv) {
        throw InternalError(
            "similarity witness failed verification; the canonical-form characterization "
            "has been falsified (bug)");
      }
    }
  }
  return witness;
}

}  // namespace ultra
