#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "ultra/constructions.hpp"
#include "ultra/errors.hpp"
#include "ultra/explore.hpp"
#include "ultra/tree.hpp"

using namespace ultra;
using testing::bijection_similarity_exists;
using testing::space_data;
using testing::x4;
using testing::y4;

namespace {

// Nested literal notation for hand-built candidate trees.
struct T {
  std::string label;
  std::vector<T> children;
  std::string point;
};

int append(const T& spec, LabeledTree& tree, int parent) {
  const int id = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({});
  tree.nodes[id].parent = parent;
  tree.nodes[id].label = Rational::parse(spec.label);
  tree.nodes[id].point = spec.point;
  for (const auto& child : spec.children) {
    const int cid = append(child, tree, id);  // may reallocate tree.nodes
    tree.nodes[id].children.push_back(cid);
  }
  return id;
}

LabeledTree make(const T& spec) {
  LabeledTree tree;
  append(spec, tree, -1);
  tree.root = 0;
  return tree;
}

T leaf(const std::string& point) { return {"0", {}, point}; }

T x4_tree() {
  return {"3", {{"1", {leaf("a"), leaf("c")}, ""}, {"2", {leaf("b"), leaf("d")}, ""}}, ""};
}

T y4_tree() {
  return {"3", {{"2", {leaf("a"), leaf("c")}, ""}, {"2", {leaf("b"), leaf("d")}, ""}}, ""};
}

bool same_matrix(const UltrametricSpace& a, const UltrametricSpace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto bi = b.index_of(a.point(i));
    if (!bi) return false;
    for (std::size_t j = 0; j < a.size(); ++j) {
      auto bj = b.index_of(a.point(j));
      if (a.distance(i, j) != b.distance(*bi, *bj)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("the representing tree of X4 matches the hand-built literal") {
  const RepresentingTree tree = build_representing_tree(x4());
  const LabeledTree& s = tree.skeleton();
  CHECK(s.nodes[s.root].label == Rational(3));
  REQUIRE(s.nodes[s.root].children.size() == 2);
  std::vector<Rational> child_labels;
  for (int c : s.nodes[s.root].children) child_labels.push_back(s.nodes[c].label);
  CHECK(DistanceSet::of(child_labels) == DistanceSet::of({Rational(1), Rational(2)}));
  CHECK(s.leaf_count() == 4);
  CHECK(canonical_form(s, SimilarityMode::Isometry) ==
        canonical_form(make(x4_tree()), SimilarityMode::Isometry));
}

TEST_CASE("the representing tree of Y4 matches its literal too") {
  const RepresentingTree tree = build_representing_tree(y4());
  CHECK(canonical_form(tree.skeleton(), SimilarityMode::Isometry) ==
        canonical_form(make(y4_tree()), SimilarityMode::Isometry));
}

TEST_CASE("two points give a root with two leaves") {
  const auto space = UltrametricSpace::create(space_data({"p", "q"}, {"7/3"}));
  const RepresentingTree tree = build_representing_tree(space);
  CHECK(tree.skeleton().nodes.size() == 3);
  CHECK(tree.skeleton().nodes[tree.root()].label == Rational(7, 3));
  CHECK_THROWS_AS(build_representing_tree(UltrametricSpace::create(space_data({"x"}, {}))),
                  DomainError);
}

TEST_CASE("tree node labels are subset diameters and levels step by one") {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 30; ++round) {
    const auto space = random_space(rng, 16);
    const RepresentingTree tree = build_representing_tree(space);
    const auto& s = tree.skeleton();
    for (std::size_t v = 0; v < s.nodes.size(); ++v) {
      CHECK(s.nodes[v].label == diameter(space, tree.members()[v]));
      if (!s.is_leaf(static_cast<int>(v))) CHECK(s.out_degree(static_cast<int>(v)) >= 2);
      if (s.nodes[v].parent != -1) {
        CHECK(tree.depths()[v] == tree.depths()[s.nodes[v].parent] + 1);
        CHECK(s.nodes[v].label < s.nodes[s.nodes[v].parent].label);
      }
    }
    CHECK(s.leaf_count() == space.size());
    CHECK(validate_tree(s).valid);
    // Internal labels together with the leaf 0 reproduce D(X).
    std::vector<Rational> labels = {Rational(0)};
    for (const auto& node : s.nodes) {
      if (!node.label.is_zero()) labels.push_back(node.label);
    }
    CHECK(DistanceSet::of(labels) == distance_set(space));
  }
}

TEST_CASE("condition-(i) validation pinpoints offending vertices") {
  CHECK(validate_tree(make(x4_tree())).valid);

  // An internal vertex of out-degree one.
  const auto unary = make({"3", {{"1", {leaf("a")}, ""}, leaf("b")}, ""});
  const auto unary_report = validate_tree(unary);
  REQUIRE_FALSE(unary_report.valid);
  CHECK(unary_report.violations[0].clause == TreeClause::OutDegreeOne);
  CHECK(unary_report.violations[0].vertex == 1);

  // A child label equal to its parent's.
  const auto flat = make({"3", {{"3", {leaf("a"), leaf("b")}, ""}, leaf("c")}, ""});
  const auto flat_report = validate_tree(flat);
  REQUIRE_FALSE(flat_report.valid);
  bool found = false;
  for (const auto& v : flat_report.violations) {
    found |= v.clause == TreeClause::LabelNotDecreasing && v.vertex == 1;
  }
  CHECK(found);

  // Zero label on an internal vertex, nonzero on a leaf.
  const auto mislabeled = make({"3", {{"0", {leaf("a"), leaf("b")}, ""}, {"1", {}, "c"}}, ""});
  const auto mislabeled_report = validate_tree(mislabeled);
  REQUIRE_FALSE(mislabeled_report.valid);
  CHECK(mislabeled_report.violations.size() >= 2);
}

TEST_CASE("structural defects raise structural errors") {
  LabeledTree cycle = make(x4_tree());
  cycle.nodes[2].children.push_back(0);  // root becomes a child
  CHECK_THROWS_AS(validate_tree(cycle), StructuralError);

  LabeledTree two_parents = make(x4_tree());
  two_parents.nodes[4].children.push_back(2);  // leaf 'c' already under node 1
  CHECK_THROWS_AS(validate_tree(two_parents), StructuralError);

  const auto tiny = make({"1", {leaf("a"), leaf("b")}, ""});
  CHECK(validate_tree(tiny).valid);
  LabeledTree pair;
  pair.nodes.push_back({Rational(1), {1}, -1, ""});
  pair.nodes.push_back({Rational(0), {}, 0, "a"});
  CHECK_THROWS_AS(validate_tree(pair), DomainError);
}

TEST_CASE("realize reproduces the X4 matrix from its tree") {
  const auto realized = realize_space(make(x4_tree()));
  CHECK(same_matrix(realized, x4()));
}

TEST_CASE("a star realizes the equilateral space") {
  const auto star = make({"3/2", {leaf(""), leaf(""), leaf(""), leaf("")}, ""});
  const auto realized = realize_space(star);
  CHECK(realized.size() == 4);
  CHECK(realized.points() == std::vector<std::string>{"x1", "x2", "x3", "x4"});
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(realized.distance(i, j) == Rational(3, 2));
  }
}

TEST_CASE("realize honors explicit leaf names and rejects bad counts") {
  const auto tree = make(x4_tree());
  const auto named = realize_space(tree, std::vector<std::string>{"p", "q", "r", "s"});
  CHECK(named.points() == std::vector<std::string>{"p", "q", "r", "s"});
  CHECK_THROWS_AS(realize_space(tree, std::vector<std::string>{"p"}), DomainError);
  const auto invalid = make({"3", {{"1", {leaf("a")}, ""}, leaf("b")}, ""});
  CHECK_THROWS_AS(realize_space(invalid), DomainError);
}

TEST_CASE("round trip: realize then rebuild is isomorphic, matrices exact") {
  std::mt19937_64 rng(55);
  for (int round = 0; round < 60; ++round) {
    const LabeledTree tree = random_valid_tree(rng, 2 + rng() % 14);
    const auto space = realize_space(tree);
    CHECK(validate_space(space.data()).valid);
    const RepresentingTree rebuilt = build_representing_tree(space);
    CHECK(canonical_form(rebuilt.skeleton(), SimilarityMode::Isometry) ==
          canonical_form(tree, SimilarityMode::Isometry));
    // Realizing the rebuilt tree reproduces the matrix point-for-point.
    CHECK(same_matrix(realize_space(rebuilt.skeleton()), space));
  }
}

TEST_CASE("canonical form ignores child order and point names") {
  const auto tree = make(x4_tree());
  auto reversed = tree;
  std::reverse(reversed.nodes[reversed.root].children.begin(),
               reversed.nodes[reversed.root].children.end());
  for (auto& node : reversed.nodes) node.point.clear();
  for (auto mode : {SimilarityMode::Isometry, SimilarityMode::WeakSimilarity}) {
    CHECK(canonical_form(tree, mode) == canonical_form(reversed, mode));
  }
}

TEST_CASE("X4 and Y4 have different encodings in both modes") {
  const auto tx = make(x4_tree());
  const auto ty = make(y4_tree());
  CHECK(canonical_form(tx, SimilarityMode::Isometry) != canonical_form(ty, SimilarityMode::Isometry));
  CHECK(canonical_form(tx, SimilarityMode::WeakSimilarity) !=
        canonical_form(ty, SimilarityMode::WeakSimilarity));
  // Ground truth: no bijection of the spaces works either.
  CHECK_FALSE(bijection_similarity_exists(x4(), y4(), SimilarityMode::Isometry));
  CHECK_FALSE(bijection_similarity_exists(x4(), y4(), SimilarityMode::WeakSimilarity));
}

TEST_CASE("doubling all distances keeps the weak form, changes the exact form") {
  const auto space = x4();
  const auto doubled = scale(space, Rational(2));
  const auto t1 = build_representing_tree(space);
  const auto t2 = build_representing_tree(doubled);
  CHECK(canonical_form(t1, SimilarityMode::WeakSimilarity) ==
        canonical_form(t2, SimilarityMode::WeakSimilarity));
  CHECK(canonical_form(t1, SimilarityMode::Isometry) !=
        canonical_form(t2, SimilarityMode::Isometry));
}

TEST_CASE("weak canonical form is invariant under any increasing relabeling") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 40; ++round) {
    const auto space = random_space(rng, 10);
    const auto tree = build_representing_tree(space);
    const auto stretched =
        build_representing_tree(scale(space, Rational(1 + rng() % 5, 1 + rng() % 3)));
    CHECK(canonical_form(tree, SimilarityMode::WeakSimilarity) ==
          canonical_form(stretched, SimilarityMode::WeakSimilarity));
    // A nonlinear increasing map on the labels must not change it either.
    LabeledTree squared = tree.skeleton();
    for (auto& node : squared.nodes) node.label = node.label * node.label + node.label;
    CHECK(canonical_form(squared, SimilarityMode::WeakSimilarity) ==
          canonical_form(tree, SimilarityMode::WeakSimilarity));
  }
}

TEST_CASE("leaves sharing a parent have equal path label sets") {
  std::mt19937_64 rng(91);
  for (int round = 0; round < 30; ++round) {
    const auto space = random_space(rng, 12);
    const RepresentingTree tree = build_representing_tree(space);
    const auto& s = tree.skeleton();
    for (std::size_t v = 0; v < s.nodes.size(); ++v) {
      if (s.is_leaf(static_cast<int>(v))) continue;
      std::vector<std::size_t> leaf_children;
      for (int c : s.nodes[v].children) {
        if (s.is_leaf(c)) leaf_children.push_back(*space.index_of(s.nodes[c].point));
      }
      for (std::size_t i = 1; i < leaf_children.size(); ++i) {
        CHECK(distance_set(space, leaf_children[0]) == distance_set(space, leaf_children[i]));
      }
    }
  }
}

TEST_CASE("find_similarity: renamed space has an isometry witness") {
  const auto space = x4();
  const auto renamed = rename_points(space, {"nw", "ne", "sw", "se"});
  const auto witness = find_similarity(space, renamed, SimilarityMode::Isometry);
  REQUIRE(witness.has_value());
  CHECK(witness->point_bijection.size() == 4);
  for (const auto& [vx, vy] : witness->scale_map) CHECK(vx == vy);
}

TEST_CASE("find_similarity: scaling yields a weak witness with the expected map") {
  const auto space = x4();
  const auto doubled = scale(space, Rational(2));
  CHECK_FALSE(find_similarity(space, doubled, SimilarityMode::Isometry).has_value());
  const auto witness = find_similarity(space, doubled, SimilarityMode::WeakSimilarity);
  REQUIRE(witness.has_value());
  const std::vector<std::pair<Rational, Rational>> expected = {
      {Rational(0), Rational(0)}, {Rational(1), Rational(2)},
      {Rational(2), Rational(4)}, {Rational(3), Rational(6)}};
  CHECK(witness->scale_map == expected);
}

TEST_CASE("find_similarity: X4 vs Y4 has no witness in either mode") {
  CHECK_FALSE(find_similarity(x4(), y4(), SimilarityMode::Isometry).has_value());
  CHECK_FALSE(find_similarity(x4(), y4(), SimilarityMode::WeakSimilarity).has_value());
}

TEST_CASE("find_similarity of singletons is trivial") {
  const auto a = UltrametricSpace::create(space_data({"a"}, {}));
  const auto b = UltrametricSpace::create(space_data({"z"}, {}));
  CHECK(find_similarity(a, b, SimilarityMode::Isometry).has_value());
}

TEST_CASE("canonical-form decision agrees with exhaustive bijection search") {
  std::mt19937_64 rng(2024);
  std::vector<UltrametricSpace> pool;
  for (int i = 0; i < 14; ++i) pool.push_back(random_space(rng, 6));
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = a; b < pool.size(); ++b) {
      for (auto mode : {SimilarityMode::Isometry, SimilarityMode::WeakSimilarity}) {
        const bool via_canonical = find_similarity(pool[a], pool[b], mode).has_value();
        const bool via_bijections = bijection_similarity_exists(pool[a], pool[b], mode);
        CHECK(via_canonical == via_bijections);
      }
    }
  }
}
