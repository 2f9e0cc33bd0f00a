#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ultra/distance_set.hpp"
#include "ultra/rational.hpp"

namespace ultra {

/// Raw candidate for a space: point names plus a distance matrix, before any
/// axiom has been checked. This is what parsers produce.
struct SpaceData {
  std::vector<std::string> points;
  std::vector<std::vector<Rational>> matrix;
};

enum class SpaceAxiom { ZeroDiagonal, Symmetry, Positivity, StrongTriangle };

struct SpaceViolation {
  SpaceAxiom axiom;
  std::array<int, 3> where;  // point indices; third is -1 for pair violations
  std::string message;
};

struct SpaceValidation {
  bool valid = false;
  std::vector<SpaceViolation> violations;
};

/// Checks every metric/ultrametric axiom and lists all violations, not just
/// the first. Malformed shape (non-square matrix, duplicate or empty point
/// names) raises StructuralError instead of being reported as a violation.
SpaceValidation validate_space(const SpaceData& data);

/// A finite ultrametric space: named points and an exact distance matrix.
/// Immutable once constructed; all operations on it are pure functions.
class UltrametricSpace {
 public:
  /// Validates and throws DomainError (listing the violations) on failure.
  static UltrametricSpace create(SpaceData data);

  /// Skips axiom checking. For constructions that are ultrametric by
  /// construction; never feed unchecked user input through this.
  static UltrametricSpace unchecked(SpaceData data);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(std::size_t i) const { return points_[i]; }
  const Rational& distance(std::size_t i, std::size_t j) const {
    return matrix_[i * points_.size() + j];
  }
  std::optional<std::size_t> index_of(std::string_view point) const;

  SpaceData data() const;

 private:
  UltrametricSpace(std::vector<std::string> points, std::vector<Rational> matrix);

  std::vector<std::string> points_;
  std::vector<Rational> matrix_;  // row-major n x n
  std::unordered_map<std::string, std::size_t> index_;
};

/// diam of a subset (point indices); the full-space overload takes no subset.
/// Singletons have diameter 0; an empty subset is a domain error.
Rational diameter(const UltrametricSpace& space, std::span<const std::size_t> subset);
Rational diameter(const UltrametricSpace& space);

/// D(X) without a focus, D_p(X) with one. Both contain 0.
DistanceSet distance_set(const UltrametricSpace& space);
DistanceSet distance_set(const UltrametricSpace& space, std::size_t focus);

/// Open ball B_r(c) as sorted point indices; always contains the center.
/// radius must be positive.
std::vector<std::size_t> open_ball(const UltrametricSpace& space, std::size_t center,
                                   const Rational& radius);

/// Subspace induced on `subset`, keeping the given point order.
UltrametricSpace induced(const UltrametricSpace& space, std::span<const std::size_t> subset);

/// Same space, new point names (order preserved).
UltrametricSpace rename_points(const UltrametricSpace& space, std::vector<std::string> names);

/// Same space with points listed in the given order; `order` must be a
/// permutation of the existing names.
UltrametricSpace reorder_points(const UltrametricSpace& space,
                                const std::vector<std::string>& order);

}  // namespace ultra
