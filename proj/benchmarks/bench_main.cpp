#include <benchmark/benchmark.h>

#include <random>

#include "ultra/center.hpp"
#include "ultra/constructions.hpp"
#include "ultra/explore.hpp"
#include "ultra/tree.hpp"

namespace {

using namespace ultra;

void BM_CenterBruteforce(benchmark::State& state) {
  const auto space = binary_word_space(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(center_bruteforce(space));
  }
}
BENCHMARK(BM_CenterBruteforce)->DenseRange(3, 9);

void BM_CenterRecursive(benchmark::State& state) {
  const auto space = binary_word_space(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(center_recursive(space));
  }
}
BENCHMARK(BM_CenterRecursive)->DenseRange(3, 7);

void BM_CenterFromTree(benchmark::State& state) {
  const auto space = binary_word_space(static_cast<unsigned>(state.range(0)));
  const auto tree = build_representing_tree(space);
  for (auto _ : state) {
    benchmark::DoNotOptimize(center_from_tree(tree));
  }
}
BENCHMARK(BM_CenterFromTree)->DenseRange(3, 9);

void BM_BuildRepresentingTree(benchmark::State& state) {
  std::mt19937_64 rng(17);
  const auto tree = random_valid_tree(rng, static_cast<std::size_t>(state.range(0)));
  const auto space = realize_space(tree);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_representing_tree(space));
  }
}
BENCHMARK(BM_BuildRepresentingTree)->RangeMultiplier(2)->Range(8, 256);

void BM_CanonicalForm(benchmark::State& state) {
  std::mt19937_64 rng(19);
  const auto tree = random_valid_tree(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_form(tree, SimilarityMode::WeakSimilarity));
  }
}
BENCHMARK(BM_CanonicalForm)->RangeMultiplier(4)->Range(16, 1024);

void BM_EnumerateClasses(benchmark::State& state) {
  EnumerationOptions options;
  options.cap = 16;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_classes(static_cast<std::size_t>(state.range(0)), options));
  }
}
BENCHMARK(BM_EnumerateClasses)->DenseRange(5, 9);

void BM_RealizeSpace(benchmark::State& state) {
  std::mt19937_64 rng(23);
  const auto tree = random_valid_tree(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(realize_space(tree));
  }
}
BENCHMARK(BM_RealizeSpace)->RangeMultiplier(2)->Range(8, 128);

}  // namespace

BENCHMARK_MAIN();
