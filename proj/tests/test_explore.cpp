#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "ultra/center.hpp"
#include "ultra/errors.hpp"
#include "ultra/explore.hpp"

using namespace ultra;
using testing::matrix_oracle_class_keys;
using testing::min_perm_rank_key;

TEST_CASE("class counts for tiny n") {
  CHECK(enumerate_classes(1).size() == 1);
  CHECK(enumerate_classes(2).size() == 1);
  // Two classes on three points: the equilateral star and the two-level
  // chain. Cross-checked against the matrix oracle below.
  CHECK(enumerate_classes(3).size() == 2);
}

TEST_CASE("the enumeration cap is enforced") {
  EnumerationOptions options;
  options.cap = 4;
  CHECK_THROWS_AS(enumerate_classes(5, options), ResourceError);
  CHECK_THROWS_AS(enumerate_classes(0, options), DomainError);
}

TEST_CASE("enumeration is deterministic across worker counts") {
  EnumerationOptions serial;
  serial.workers = 1;
  EnumerationOptions parallel;
  parallel.workers = 4;
  const auto a = enumerate_classes(6, serial);
  const auto b = enumerate_classes(6, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].key == b[i].key);
    CHECK(a[i].center_size == b[i].center_size);
  }
}

TEST_CASE("enumeration soundness: every class key reproduces itself") {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (const auto& cls : enumerate_classes(n)) {
      CHECK(validate_tree(cls.canonical_tree).valid);
      const auto space = realize_space(cls.canonical_tree);
      CHECK(space.size() == n);
      const auto rebuilt = build_representing_tree(space);
      CHECK(canonical_form(rebuilt, SimilarityMode::WeakSimilarity) == cls.key);
      CHECK(center_bruteforce(space).size() == cls.center_size);
    }
  }
}

TEST_CASE("enumeration completeness against the matrix oracle, n <= 5") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto oracle_keys = matrix_oracle_class_keys(n);
    const auto classes = enumerate_classes(n);
    CHECK(classes.size() == oracle_keys.size());
    std::set<std::vector<int>> tree_keys;
    for (const auto& cls : classes) {
      tree_keys.insert(n == 1 ? std::vector<int>{}
                              : min_perm_rank_key(realize_space(cls.canonical_tree)));
    }
    CHECK(tree_keys == oracle_keys);
  }
}

TEST_CASE("center size is invariant across concrete relabelings of a class") {
  for (const auto& cls : enumerate_classes(5)) {
    const auto base = realize_space(cls.canonical_tree);
    // Spread the rank labels out by an increasing map: rank k -> k^2 + 1.
    LabeledTree stretched = cls.canonical_tree;
    for (auto& node : stretched.nodes) {
      if (!node.label.is_zero()) {
        const std::int64_t k = node.label.numerator();
        node.label = Rational(k * k + 1);
      }
    }
    const auto valued = realize_space(stretched);
    CHECK(center_bruteforce(valued).size() == center_bruteforce(base).size());
  }
}

TEST_CASE("the bound table reproduces 1 + floor(log2 n) for n <= 8") {
  const BoundTable table = max_center_table(8);
  REQUIRE(table.rows.size() == 8);
  const std::vector<std::size_t> expected = {1, 2, 2, 3, 3, 3, 3, 4};
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(table.rows[i].n == i + 1);
    CHECK(table.rows[i].max_center_size == expected[i]);
    CHECK(table.rows[i].formula_value == expected[i]);
  }
  // The stepping identities M(2^l) = l + 1 and M(2^l - 1) = l.
  for (std::size_t l = 1; l <= 3; ++l) {
    CHECK(table.rows[(std::size_t{1} << l) - 1].max_center_size == l + 1);
    CHECK(table.rows[(std::size_t{1} << l) - 2].max_center_size == l);
  }
}

TEST_CASE("conjecture 1 harness, l = 1 and l = 2") {
  const ConjectureReport c1 = check_conjecture_1(1);
  CHECK(c1.verdict == Verdict::NoCounterexample);
  CHECK(c1.exhaustive);

  const ConjectureReport c2 = check_conjecture_1(2);
  CHECK(c2.exhaustive);
  REQUIRE_FALSE(c2.evidence.empty());
  // Whatever the verdict, the attached data must re-verify.
  for (const auto& evidence : c2.evidence) {
    const auto space = UltrametricSpace::create(evidence.space);
    CHECK(center_bruteforce(space) == evidence.center);
    CHECK(canonical_form(build_representing_tree(space), SimilarityMode::WeakSimilarity) ==
          evidence.canonical_key);
  }
}

TEST_CASE("conjecture 2 harness, l = 1 and l = 2") {
  const ConjectureReport c1 = check_conjecture_2(1, 2);
  CHECK(c1.verdict == Verdict::NoCounterexample);
  CHECK(c1.exhaustive);

  const ConjectureReport c2 = check_conjecture_2(2, 4);
  CHECK(c2.exhaustive);
  for (const auto& evidence : c2.evidence) {
    const auto space = UltrametricSpace::create(evidence.space);
    CHECK(center_bruteforce(space) == evidence.center);
  }
}

TEST_CASE("conjecture 3 harness verifies witnesses") {
  const ConjectureReport report =
      check_conjecture_3(DistanceSet::of({Rational(0), Rational(3)}));
  CHECK(report.verdict == Verdict::WitnessVerified);
  REQUIRE(report.evidence.size() == 1);
  CHECK(report.evidence[0].space.points.size() == 2);

  const ConjectureReport y4_report =
      check_conjecture_3(DistanceSet::of({Rational(0), Rational(2), Rational(3)}));
  const auto witness = UltrametricSpace::create(y4_report.evidence[0].space);
  CHECK(find_similarity(witness, ultra::testing::y4(), SimilarityMode::Isometry).has_value());

  CHECK_THROWS_AS(check_conjecture_3(DistanceSet::of({Rational(1)})), DomainError);
}

TEST_CASE("random trees are valid and random spaces ultrametric") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 50; ++round) {
    const LabeledTree tree = random_valid_tree(rng, 2 + rng() % 20);
    CHECK(validate_tree(tree).valid);
    const auto space = random_space(rng, 12);
    CHECK(validate_space(space.data()).valid);
  }
}
