#pragma once

#include <cstddef>
#include <optional>

#include "ultra/space.hpp"

namespace ultra {

/// Default ceiling on generated point counts.
inline constexpr std::size_t kDefaultPointBudget = std::size_t{1} << 16;

/// The space of all n-bit binary words with d(x, y) = 2^(-m), m the first
/// position at which the words differ. 2^n points; attains the center bound
/// with |C| = n + 1.
UltrametricSpace binary_word_space(unsigned n, std::size_t point_budget = kDefaultPointBudget);

/// Two disjoint copies of `base` with every cross distance t_star, which
/// must exceed diam(base). Copies are suffixed "·0" / "·1". The center gains
/// exactly the one value t_star: |C| grows by one.
UltrametricSpace double_space(const UltrametricSpace& base, const Rational& t_star);

/// Adds one point without changing the center of distances: a new
/// zero-labeled leaf is attached to an internal node of the representing
/// tree that already has a leaf child (the deepest such node, ties broken by
/// canonical encoding, then smallest member index). Requires |base| ≥ 2.
UltrametricSpace add_point(const UltrametricSpace& base);

/// A space with D(X) = C(X) = target: the perfect binary tree of depth
/// |target|-1 whose level-i nodes all carry the (i+1)-th largest value.
/// target must contain 0. The result is verified internally.
UltrametricSpace realize_center_set(const DistanceSet& target,
                                    std::size_t point_budget = kDefaultPointBudget);

/// All distances multiplied by a positive factor: a canonical weak
/// similarity of the input.
UltrametricSpace scale(const UltrametricSpace& space, const Rational& factor);

/// CLI/config carrier for the generators above.
struct ConstructionSpec {
  enum class Kind { BinaryWord, Double, AddPoint, RealizeSet };
  Kind kind;
  unsigned n = 0;                      // BinaryWord
  std::optional<SpaceData> base;       // Double, AddPoint
  std::optional<Rational> t_star;      // Double
  std::vector<Rational> target_set;    // RealizeSet
};

/// Dispatches a parsed spec; base spaces go through full validation.
UltrametricSpace build(const ConstructionSpec& spec,
                       std::size_t point_budget = kDefaultPointBudget);

}  // namespace ultra
