#pragma once

#include <random>
#include <string>
#include <vector>

#include "ultra/center.hpp"
#include "ultra/distance_set.hpp"
#include "ultra/tree.hpp"

namespace ultra {

struct EnumerationOptions {
  std::size_t cap = 9;   // largest point count we will enumerate exhaustively
  unsigned workers = 0;  // 0 = hardware concurrency
};

/// One weak-similarity class of n-point ultrametric spaces, keyed by the
/// canonical form of its rank-labeled representing tree (internal labels are
/// the ranks 1..L, leaves 0).
struct EnumerationClass {
  LabeledTree canonical_tree;
  std::string key;
  std::size_t n = 0;
  std::size_t center_size = 0;
};

/// Exactly one representative per weak-similarity class: every unordered
/// rooted tree shape with n leaves and all internal out-degrees ≥ 2, crossed
/// with every strictly-decreasing surjective rank labeling, deduplicated by
/// canonical form. Output is sorted by key and deterministic for any worker
/// count. n above the cap raises ResourceError.
std::vector<EnumerationClass> enumerate_classes(std::size_t n,
                                                const EnumerationOptions& options = {});

struct BoundRow {
  std::size_t n = 0;
  std::size_t max_center_size = 0;
  std::size_t formula_value = 0;  // 1 + floor(log2 n)
  std::size_t class_count = 0;
};

struct BoundTable {
  std::vector<BoundRow> rows;
};

/// max |C(X)| over all n-point classes for n = 1..n_max, computed on an
/// integer-rank realization of each class. Fails loudly (InternalError) if
/// any row misses 1 + floor(log2 n) or the column is not nondecreasing:
/// either would falsify the bound theorem, i.e. expose a bug.
BoundTable max_center_table(std::size_t n_max, const EnumerationOptions& options = {});

enum class Verdict { NoCounterexample, Counterexample, WitnessVerified };

struct ConjectureEvidence {
  SpaceData space;
  DistanceSet center;
  std::string canonical_key;
};

struct ConjectureReport {
  int conjecture_id = 0;
  std::string scope;
  Verdict verdict = Verdict::NoCounterexample;
  bool exhaustive = false;
  std::vector<ConjectureEvidence> evidence;
  std::string notes;
};

/// Among all 2^l-point classes attaining |C| = l + 1: are any two distinct
/// (hence non-weakly-similar) classes tied at that center size? Two such
/// classes refute the conjectured biconditional and are reported with fully
/// reverifiable data.
ConjectureReport check_conjecture_1(unsigned l, const EnumerationOptions& options = {});

/// Concrete-valued version: every extremal 2^l-point class is realized under
/// every strictly increasing assignment of values from {1..alphabet}; any
/// two non-isometric realizations sharing the same center set C(X) = C(Y)
/// form a counterexample. The verdict is exhaustive within the alphabet.
ConjectureReport check_conjecture_2(unsigned l, unsigned alphabet,
                                    const EnumerationOptions& options = {});

/// Builds a witness space with D(X) = C(X) = target and re-verifies it by
/// brute force.
ConjectureReport check_conjecture_3(const DistanceSet& target);

/// A uniformly-shaped random tree satisfying the representing-tree
/// conditions, with integer labels; n_leaves ≥ 2.
LabeledTree random_valid_tree(std::mt19937_64& rng, std::size_t n_leaves);

/// realize_space over a random valid tree with 2..max_points leaves, with a
/// random global rational scale applied so distances exercise non-integers.
UltrametricSpace random_space(std::mt19937_64& rng, std::size_t max_points);

}  // namespace ultra
