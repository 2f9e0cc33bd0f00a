#include "ultra/space.hpp"

#include <algorithm>
#include <unordered_set>

#include "ultra/errors.hpp"

namespace ultra {

namespace {

void check_shape(const SpaceData& data) {
  const std::size_t n = data.points.size();
  if (n == 0) throw StructuralError("a space needs at least one point");
  std::unordered_set<std::string_view> seen;
  for (const auto& name : data.points) {
    if (name.empty()) throw StructuralError("empty point identifier");
    if (!seen.insert(name).second) {
      throw StructuralError("duplicate point identifier '" + name + "'");
    }
  }
  if (data.matrix.size() != n) {
    throw StructuralError("matrix has " + std::to_string(data.matrix.size()) + " rows for " +
                          std::to_string(n) + " points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (data.matrix[i].size() != n) {
      throw StructuralError("matrix row " + std::to_string(i) + " has " +
                            std::to_string(data.matrix[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
  }
}

std::string axiom_message(const SpaceData& d, SpaceAxiom axiom, int i, int j, int k) {
  const auto& p = d.points;
  switch (axiom) {
    case SpaceAxiom::ZeroDiagonal:
      return "d(" + p[i] + "," + p[i] + ") = " + d.matrix[i][i].str() + ", expected 0";
    case SpaceAxiom::Symmetry:
      return "d(" + p[i] + "," + p[j] + ") = " + d.matrix[i][j].str() + " but d(" + p[j] + "," +
             p[i] + ") = " + d.matrix[j][i].str();
    case SpaceAxiom::Positivity:
      return "d(" + p[i] + "," + p[j] + ") = 0 for distinct points";
    case SpaceAxiom::StrongTriangle:
      return "d(" + p[i] + "," + p[j] + ") = " + d.matrix[i][j].str() + " > max(d(" + p[i] + "," +
             p[k] + "), d(" + p[k] + "," + p[j] + ")) = " +
             std::max(d.matrix[i][k], d.matrix[k][j]).str();
  }
  return {};
}

}  // namespace

SpaceValidation validate_space(const SpaceData& data) {
  check_shape(data);
  const int n = static_cast<int>(data.points.size());
  const auto& m = data.matrix;
  SpaceValidation report;

  for (int i = 0; i < n; ++i) {
    if (!m[i][i].is_zero()) {
      report.violations.push_back(
          {SpaceAxiom::ZeroDiagonal, {i, i, -1}, axiom_message(data, SpaceAxiom::ZeroDiagonal, i, i, -1)});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (m[i][j] != m[j][i]) {
        report.violations.push_back(
            {SpaceAxiom::Symmetry, {i, j, -1}, axiom_message(data, SpaceAxiom::Symmetry, i, j, -1)});
      }
      if (m[i][j].is_zero()) {
        report.violations.push_back(
            {SpaceAxiom::Positivity, {i, j, -1}, axiom_message(data, SpaceAxiom::Positivity, i, j, -1)});
      }
    }
  }
  // Strong triangle over every unordered triple, each of the three pairings.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const std::array<std::array<int, 3>, 3> combos = {{{a, b, c}, {a, c, b}, {b, c, a}}};
        for (const auto& [i, j, k] : combos) {
          if (m[i][j] > std::max(m[i][k], m[k][j])) {
            report.violations.push_back({SpaceAxiom::StrongTriangle,
                                         {a, b, c},
                                         axiom_message(data, SpaceAxiom::StrongTriangle, i, j, k)});
          }
        }
      }
    }
  }
  report.valid = report.violations.empty();
  return report;
}

UltrametricSpace::UltrametricSpace(std::vector<std::string> points, std::vector<Rational> matrix)
    : points_(std::move(points)), matrix_(std::move(matrix)) {
  for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i], i);
}

UltrametricSpace UltrametricSpace::create(SpaceData data) {
  SpaceValidation report = validate_space(data);
  if (!report.valid) {
    std::string message = "not an ultrametric space (" +
                          std::to_string(report.violations.size()) + " violation(s)):";
    std::size_t shown = 0;
    for (const auto& v : report.violations) {
      if (shown++ == 5) {
        message += " ...";
        break;
      }
      message += " [" + v.message + "]";
    }
    throw DomainError(message);
  }
  return unchecked(std::move(data));
}

UltrametricSpace UltrametricSpace::unchecked(SpaceData data) {
  check_shape(data);
  const std::size_t n = data.points.size();
  std::vector<Rational> flat;
  flat.reserve(n * n);
  for (auto& row : data.matrix) {
    for (auto& value : row) flat.push_back(value);
  }
  return UltrametricSpace(std::move(data.points), std::move(flat));
}

std::optional<std::size_t> UltrametricSpace::index_of(std::string_view point) const {
  auto it = index_.find(std::string(point));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SpaceData UltrametricSpace::data() const {
  SpaceData out;
  out.points = points_;
  const std::size_t n = size();
  out.matrix.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.matrix[i].assign(matrix_.begin() + static_cast<long>(i * n),
                         matrix_.begin() + static_cast<long>((i + 1) * n));
  }
  return out;
}

Rational diameter(const UltrametricSpace& space, std::span<const std::size_t> subset) {
  if (subset.empty()) throw DomainError("diameter of an empty subset");
  Rational best = 0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      best = std::max(best, space.distance(subset[a], subset[b]));
    }
  }
  return best;
}

Rational diameter(const UltrametricSpace& space) {
  Rational best = 0;
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, space.distance(i, j));
  }
  return best;
}

DistanceSet distance_set(const UltrametricSpace& space) {
  std::vector<Rational> values;
  const std::size_t n = space.size();
  values.reserve(n * (n - 1) / 2 + 1);
  values.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) values.push_back(space.distance(i, j));
  }
  return DistanceSet::of(std::move(values));
}

DistanceSet distance_set(const UltrametricSpace& space, std::size_t focus) {
  if (focus >= space.size()) throw DomainError("focus point is not in the space");
  std::vector<Rational> values;
  values.reserve(space.size());
  for (std::size_t j = 0; j < space.size(); ++j) values.push_back(space.distance(focus, j));
  return DistanceSet::of(std::move(values));
}

std::vector<std::size_t> open_ball(const UltrametricSpace& space, std::size_t center,
                                   const Rational& radius) {
  if (center >= space.size()) throw DomainError("ball center is not in the space");
  if (radius.is_zero()) throw DomainError("open ball radius must be positive");
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (space.distance(center, j) < radius) members.push_back(j);
  }
  return members;
}

UltrametricSpace induced(const UltrametricSpace& space, std::span<const std::size_t> subset) {
  if (subset.empty()) throw DomainError("induced subspace of an empty subset");
  SpaceData data;
  data.points.reserve(subset.size());
  for (std::size_t i : subset) data.points.push_back(space.point(i));
  data.matrix.resize(subset.size());
  for (std::size_t a = 0; a < subset.size(); ++a) {
    data.matrix[a].reserve(subset.size());
    for (std::size_t b = 0; b < subset.size(); ++b) {
      data.matrix[a].push_back(space.distance(subset[a], subset[b]));
    }
  }
  return UltrametricSpace::unchecked(std::move(data));
}

UltrametricSpace rename_points(const UltrametricSpace& space, std::vector<std::string> names) {
  if (names.size() != space.size()) throw DomainError("rename needs one name per point");
  SpaceData data = space.data();
  data.points = std::move(names);
  return UltrametricSpace::unchecked(std::move(data));
}

UltrametricSpace reorder_points(const UltrametricSpace& space,
                                const std::vector<std::string>& order) {
  if (order.size() != space.size()) throw DomainError("reorder needs every point exactly once");
  std::vector<std::size_t> perm;
  perm.reserve(order.size());
  for (const auto& name : order) {
    auto idx = space.index_of(name);
    if (!idx) throw DomainError("unknown point '" + name + "' in reorder");
    perm.push_back(*idx);
  }
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw DomainError("reorder must be a permutation of the point set");
  }
  return induced(space, perm);
}

}  // namespace ultra
