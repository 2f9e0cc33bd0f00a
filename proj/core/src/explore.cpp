#include "ultra/explore.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "ultra/constructions.hpp"
#include "ultra/errors.hpp"

namespace ultra {

namespace {

// ---------------------------------------------------------------------------
// Unordered rooted tree shapes with a given leaf count and no out-degree-1
// vertex. A shape's children form a nondecreasing multiset of references
// into the registry, which makes each unordered shape appear exactly once.
// ---------------------------------------------------------------------------

struct ShapeRef {
  int leaves = 1;
  int index = 0;
};

struct Shape {
  std::vector<ShapeRef> children;  // empty = leaf
};

class ShapeRegistry {
 public:
  void build(int n) {
    if (static_cast<int>(by_leaves_.size()) > n) return;
    by_leaves_.resize(static_cast<std::size_t>(n) + 1);
    if (n >= 1 && by_leaves_[1].empty()) by_leaves_[1].push_back(Shape{});
    for (int m = 2; m <= n; ++m) {
      if (!by_leaves_[m].empty()) continue;
      std::vector<ShapeRef> current;
      collect(m, {1, 0}, current, m);
    }
  }

  const std::vector<Shape>& shapes(int leaves) const { return by_leaves_[leaves]; }

 private:
  void collect(int remaining, ShapeRef min_ref, std::vector<ShapeRef>& current, int m) {
    if (remaining == 0) {
      if (current.size() >= 2) by_leaves_[m].push_back(Shape{current});
      return;
    }
    for (int l = min_ref.leaves; l <= remaining && l < m; ++l) {
      const int start = (l == min_ref.leaves) ? min_ref.index : 0;
      for (int idx = start; idx < static_cast<int>(by_leaves_[l].size()); ++idx) {
        current.push_back({l, idx});
        collect(remaining - l, {l, idx}, current, m);
        current.pop_back();
      }
    }
  }

  std::vector<std::vector<Shape>> by_leaves_;
};

struct Skeleton {
  LabeledTree tree;                  // labels filled in later
  std::vector<int> internal_order;   // internal vertices, parents first
  std::vector<int> internal_height;  // longest internal chain below, incl. self
};

Skeleton instantiate(const ShapeRegistry& registry, ShapeRef ref) {
  Skeleton skeleton;
  std::function<int(ShapeRef, int)> build = [&](ShapeRef r, int parent) {
    const int id = static_cast<int>(skeleton.tree.nodes.size());
    skeleton.tree.nodes.push_back({});
    skeleton.tree.nodes[id].parent = parent;
    const Shape& shape = registry.shapes(r.leaves)[r.index];
    for (ShapeRef child : shape.children) {
      const int cid = build(child, id);
      skeleton.tree.nodes[id].children.push_back(cid);
    }
    return id;
  };
  build(ref, -1);
  skeleton.tree.root = 0;

  const int size = static_cast<int>(skeleton.tree.nodes.size());
  skeleton.internal_height.assign(size, 0);
  for (int v = size - 1; v >= 0; --v) {  // children have larger ids
    if (skeleton.tree.is_leaf(v)) continue;
    int best = 0;
    for (int c : skeleton.tree.nodes[v].children) {
      best = std::max(best, skeleton.internal_height[c]);
    }
    skeleton.internal_height[v] = best + 1;
  }
  for (int v = 0; v < size; ++v) {
    if (!skeleton.tree.is_leaf(v)) skeleton.internal_order.push_back(v);
  }
  return skeleton;
}

// Every strictly-decreasing labeling of the internal vertices that uses each
// of the values 1..L at least once. Since labels decrease toward the leaves
// and every value is used, the root always carries L.
void for_each_labeling(Skeleton& skeleton, int label_count,
                       const std::function<void(const LabeledTree&)>& emit) {
  const auto& order = skeleton.internal_order;
  const int total = static_cast<int>(order.size());
  if (label_count > total || skeleton.internal_height[skeleton.tree.root] > label_count) return;

  std::vector<int> use_count(static_cast<std::size_t>(label_count) + 1, 0);
  int distinct_used = 0;

  std::function<void(int)> assign = [&](int pos) {
    if (pos == total) {
      if (distinct_used == label_count) emit(skeleton.tree);
      return;
    }
    const int v = order[pos];
    const int lower = skeleton.internal_height[v];
    int upper = label_count;
    if (v != skeleton.tree.root) {
      upper = static_cast<int>(skeleton.tree.nodes[skeleton.tree.nodes[v].parent].label
                                   .numerator()) - 1;
    } else {
      // Surjectivity forces the maximum onto the root.
      const int missing_after = label_count - distinct_used;
      if (missing_after > total - pos) return;
      skeleton.tree.nodes[v].label = Rational(label_count);
      ++use_count[label_count];
      if (use_count[label_count] == 1) ++distinct_used;
      assign(pos + 1);
      --use_count[label_count];
      if (use_count[label_count] == 0) --distinct_used;
      return;
    }
    for (int value = lower; value <= upper; ++value) {
      const bool fresh = use_count[value] == 0;
      // Surjectivity prune: the slots left must cover every unused value.
      if (label_count - (distinct_used + (fresh ? 1 : 0)) > total - pos - 1) continue;
      skeleton.tree.nodes[v].label = Rational(value);
      ++use_count[value];
      if (fresh) ++distinct_used;
      assign(pos + 1);
      --use_count[value];
      if (fresh) --distinct_used;
    }
  };
  assign(0);
}

std::map<std::string, LabeledTree> classes_of_shape(const ShapeRegistry& registry, ShapeRef ref) {
  std::map<std::string, LabeledTree> classes;
  Skeleton skeleton = instantiate(registry, ref);
  const int internal_count = static_cast<int>(skeleton.internal_order.size());
  for (int label_count = 1; label_count <= internal_count; ++label_count) {
    for_each_labeling(skeleton, label_count, [&](const LabeledTree& tree) {
      std::string key = canonical_form(tree, SimilarityMode::WeakSimilarity);
      classes.emplace(std::move(key), tree);
    });
  }
  return classes;
}

EnumerationClass singleton_class() {
  EnumerationClass cls;
  cls.canonical_tree.nodes.push_back({});
  cls.canonical_tree.root = 0;
  cls.key = "(0)";
  cls.n = 1;
  cls.center_size = 1;
  return cls;
}

}  // namespace

std::vector<EnumerationClass> enumerate_classes(std::size_t n, const EnumerationOptions& options) {
  if (n == 0) throw DomainError("there is no ultrametric space on zero points");
  if (n > options.cap) {
    throw ResourceError("enumeration of " + std::to_string(n) +
                        "-point spaces exceeds the cap of " + std::to_string(options.cap));
  }
  if (n == 1) return {singleton_class()};

  ShapeRegistry registry;
  registry.build(static_cast<int>(n));
  const std::size_t shape_count = registry.shapes(static_cast<int>(n)).size();

  unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(shape_count)));

  std::vector<std::map<std::string, LabeledTree>> locals(workers);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run = [&](unsigned worker) {
    try {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= shape_count) break;
        auto found = classes_of_shape(registry, {static_cast<int>(n), static_cast<int>(i)});
        locals[worker].merge(found);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);

  // Distinct shapes cannot share a canonical key, so this merge is a
  // disjoint union; sorting by key fixes the output order.
  std::map<std::string, LabeledTree> merged;
  for (auto& local : locals) merged.merge(local);

  std::vector<EnumerationClass> classes;
  classes.reserve(merged.size());
  for (auto& [key, tree] : merged) {
    EnumerationClass cls;
    cls.key = key;
    cls.n = n;
    const UltrametricSpace realization = realize_space(tree);
    cls.center_size = center_bruteforce(realization).size();
    cls.canonical_tree = std::move(tree);
    classes.push_back(std::move(cls));
  }
  return classes;
}

BoundTable max_center_table(std::size_t n_max, const EnumerationOptions& options) {
  if (n_max == 0) throw DomainError("bound table needs n_max >= 1");
  BoundTable table;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto classes = enumerate_classes(n, options);
    BoundRow row;
    row.n = n;
    row.class_count = classes.size();
    row.formula_value = static_cast<std::size_t>(std::bit_width(n));
    for (const auto& cls : classes) row.max_center_size = std::max(row.max_center_size, cls.center_size);
    if (row.max_center_size != row.formula_value) {
      throw InternalError("bound table: max |C| over " + std::to_string(n) + "-point classes is " +
                          std::to_string(row.max_center_size) + ", expected 1 + floor(log2 n) = " +
                          std::to_string(row.formula_value) +
                          " (this would falsify the bound theorem; it is a bug)");
    }
    if (!table.rows.empty() && row.max_center_size < table.rows.back().max_center_size) {
      throw InternalError("bound table: max |C| decreased between n = " +
                          std::to_string(n - 1) + " and n = " + std::to_string(n));
    }
    table.rows.push_back(row);
  }
  return table;
}

namespace {

ConjectureEvidence evidence_from(const LabeledTree& tree, const std::string& key) {
  const UltrametricSpace space = realize_space(tree);
  ConjectureEvidence evidence;
  evidence.space = space.data();
  evidence.center = center_bruteforce(space);
  evidence.canonical_key = key;
  return evidence;
}

}  // namespace

ConjectureReport check_conjecture_1(unsigned l, const EnumerationOptions& options) {
  const std::size_t n = std::size_t{1} << l;
  ConjectureReport report;
  report.conjecture_id = 1;
  report.scope = "all weak-similarity classes with |X| = 2^" + std::to_string(l) + " = " +
                 std::to_string(n) + " points";

  const auto classes = enumerate_classes(n, options);
  std::vector<const EnumerationClass*> extremal;
  for (const auto& cls : classes) {
    if (cls.center_size == static_cast<std::size_t>(l) + 1) extremal.push_back(&cls);
  }
  if (extremal.empty()) {
    throw InternalError("no class of size 2^" + std::to_string(l) + " attains |C| = " +
                        std::to_string(l + 1) + "; the bound is attained in theory, so this is a bug");
  }
  report.exhaustive = true;
  if (extremal.size() >= 2) {
    report.verdict = Verdict::Counterexample;
    report.evidence.push_back(evidence_from(extremal[0]->canonical_tree, extremal[0]->key));
    report.evidence.push_back(evidence_from(extremal[1]->canonical_tree, extremal[1]->key));
    report.notes = "two distinct (hence non-weakly-similar) classes both attain |C| = " +
                   std::to_string(l + 1) + "; " + std::to_string(extremal.size()) +
                   " such classes exist in total";
  } else {
    report.verdict = Verdict::NoCounterexample;
    report.evidence.push_back(evidence_from(extremal[0]->canonical_tree, extremal[0]->key));
    report.notes = "exactly one of the " + std::to_string(classes.size()) +
                   " classes attains |C| = " + std::to_string(l + 1) +
                   ", so equal extremal center sizes force weak similarity";
  }
  return report;
}

ConjectureReport check_conjecture_2(unsigned l, unsigned alphabet,
                                    const EnumerationOptions& options) {
  const std::size_t n = std::size_t{1} << l;
  ConjectureReport report;
  report.conjecture_id = 2;
  report.scope = "all valued realizations of extremal " + std::to_string(n) +
                 "-point classes with labels from {1.." + std::to_string(alphabet) + "}";

  const auto classes = enumerate_classes(n, options);

  struct Realization {
    std::string class_key;
    std::vector<int> assignment;
    UltrametricSpace space;
    DistanceSet center;
  };
  std::vector<Realization> realizations;

  for (const auto& cls : classes) {
    if (cls.center_size != static_cast<std::size_t>(l) + 1) continue;
    int label_count = 0;
    for (const auto& node : cls.canonical_tree.nodes) {
      label_count = std::max(label_count, static_cast<int>(node.label.numerator()));
    }
    if (label_count > static_cast<int>(alphabet)) continue;

    // Every strictly increasing assignment {1..label_count} -> {1..alphabet}.
    std::vector<int> chosen(static_cast<std::size_t>(label_count));
    std::function<void(int, int)> pick = [&](int slot, int min_value) {
      if (slot == label_count) {
        LabeledTree valued = cls.canonical_tree;
        for (auto& node : valued.nodes) {
          if (!node.label.is_zero()) {
            node.label = Rational(chosen[static_cast<std::size_t>(node.label.numerator()) - 1]);
          }
        }
        UltrametricSpace space = realize_space(valued);
        DistanceSet center = center_bruteforce(space);
        realizations.push_back({cls.key, chosen, std::move(space), std::move(center)});
        return;
      }
      for (int value = min_value; value <= static_cast<int>(alphabet); ++value) {
        chosen[slot] = value;
        pick(slot + 1, value + 1);
      }
    };
    pick(0, 1);
  }

  report.exhaustive = true;  // within the stated alphabet
  std::map<std::string, std::vector<const Realization*>> by_center;
  for (const auto& r : realizations) by_center[r.center.str()].push_back(&r);

  for (const auto& [center_key, bucket] : by_center) {
    if (bucket.size() < 2) continue;
    const Realization* a = bucket[0];
    const Realization* b = bucket[1];
    // Distinct (class, assignment) pairs are never isometric; re-check anyway.
    const auto ta = build_representing_tree(a->space);
    const auto tb = build_representing_tree(b->space);
    if (canonical_form(ta, SimilarityMode::Isometry) == canonical_form(tb, SimilarityMode::Isometry)) {
      continue;
    }
    report.verdict = Verdict::Counterexample;
    for (const Realization* r : {a, b}) {
      ConjectureEvidence evidence;
      evidence.space = r->space.data();
      evidence.center = r->center;
      evidence.canonical_key = r->class_key;
      report.evidence.push_back(std::move(evidence));
    }
    report.notes = "two non-isometric extremal realizations share the center set " + center_key;
    return report;
  }

  report.verdict = Verdict::NoCounterexample;
  report.notes = std::to_string(realizations.size()) +
                 " valued realizations of extremal classes all have pairwise distinct center sets";
  if (!realizations.empty()) {
    ConjectureEvidence evidence;
    evidence.space = realizations.front().space.data();
    evidence.center = realizations.front().center;
    evidence.canonical_key = realizations.front().class_key;
    report.evidence.push_back(std::move(evidence));
  }
  return report;
}

ConjectureReport check_conjecture_3(const DistanceSet& target) {
  ConjectureReport report;
  report.conjecture_id = 3;
  report.scope = "target set A = " + target.str();

  const UltrametricSpace witness = realize_center_set(target);
  if (distance_set(witness) != target || center_bruteforce(witness) != target) {
    throw InternalError("conjecture-3 witness failed re-verification");
  }
  ConjectureEvidence evidence;
  evidence.space = witness.data();
  evidence.center = center_bruteforce(witness);
  if (witness.size() >= 2) {
    evidence.canonical_key =
        canonical_form(build_representing_tree(witness), SimilarityMode::Isometry);
  }
  report.evidence.push_back(std::move(evidence));
  report.verdict = Verdict::WitnessVerified;
  report.exhaustive = true;
  report.notes = "witness has " + std::to_string(witness.size()) +
                 " points and satisfies D(X) = C(X) = A by brute force";
  return report;
}

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + rng() % (hi - lo + 1);
}

int build_random_shape(std::mt19937_64& rng, LabeledTree& tree, int parent, std::size_t leaves) {
  const int id = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({});
  tree.nodes[id].parent = parent;
  if (leaves == 1) return id;
  const std::size_t parts = uniform(rng, 2, std::min<std::size_t>(leaves, 4));
  std::vector<std::size_t> sizes;
  std::size_t remaining = leaves;
  for (std::size_t i = 0; i + 1 < parts; ++i) {
    const std::size_t mine = uniform(rng, 1, remaining - (parts - 1 - i));
    sizes.push_back(mine);
    remaining -= mine;
  }
  sizes.push_back(remaining);
  for (std::size_t size : sizes) {
    const int child = build_random_shape(rng, tree, id, size);
    tree.nodes[id].children.push_back(child);
  }
  return id;
}

}  // namespace

LabeledTree random_valid_tree(std::mt19937_64& rng, std::size_t n_leaves) {
  if (n_leaves < 2) throw DomainError("random trees need at least two leaves");
  LabeledTree tree;
  build_random_shape(rng, tree, -1, n_leaves);
  tree.root = 0;

  const int size = static_cast<int>(tree.nodes.size());
  std::vector<int> height(size, 0);
  for (int v = size - 1; v >= 0; --v) {
    if (tree.is_leaf(v)) continue;
    for (int c : tree.nodes[v].children) height[v] = std::max(height[v], height[c]);
    height[v] += 1;
  }
  // Integer labels: anywhere in [chain-height, parent label) keeps room for
  // the strictly decreasing chains below.
  for (int v = 0; v < size; ++v) {
    if (tree.is_leaf(v)) {
      tree.nodes[v].label = 0;
      continue;
    }
    if (v == tree.root) {
      tree.nodes[v].label = Rational(static_cast<std::int64_t>(
          uniform(rng, static_cast<std::size_t>(height[v]), static_cast<std::size_t>(height[v]) + 4)));
    } else {
      const auto parent_label =
          static_cast<std::size_t>(tree.nodes[tree.nodes[v].parent].label.numerator());
      tree.nodes[v].label = Rational(static_cast<std::int64_t>(
          uniform(rng, static_cast<std::size_t>(height[v]), parent_label - 1)));
    }
  }
  return tree;
}

UltrametricSpace random_space(std::mt19937_64& rng, std::size_t max_points) {
  if (max_points < 2) throw DomainError("random spaces need room for at least two points");
  const std::size_t n = uniform(rng, 2, max_points);
  const LabeledTree tree = random_valid_tree(rng, n);
  const UltrametricSpace space = realize_space(tree);
  const Rational factor(static_cast<std::int64_t>(uniform(rng, 1, 8)),
                        static_cast<std::int64_t>(uniform(rng, 1, 8)));
  return scale(space, factor);
}

}  // namespace ultra
