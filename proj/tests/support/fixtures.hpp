#pragma once

#include <string>
#include <vector>

#include "ultra/space.hpp"

namespace ultra::testing {

/// Builds a space from point names and the upper triangle (row by row).
inline SpaceData space_data(std::vector<std::string> points,
                            const std::vector<std::string>& upper) {
  const std::size_t n = points.size();
  SpaceData data;
  data.points = std::move(points);
  data.matrix.assign(n, std::vector<Rational>(n, Rational(0)));
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      data.matrix[i][j] = Rational::parse(upper.at(next++));
      data.matrix[j][i] = data.matrix[i][j];
    }
  }
  return data;
}

/// The four-point space with d(a,c) = 1, d(b,d) = 2 and every other pair at
/// distance 3. Its center is {0, 3}.
inline SpaceData x4_data() {
  return space_data({"a", "b", "c", "d"}, {"3", "1", "3", "3", "2", "3"});
}

/// The four-point space with d(a,c) = d(b,d) = 2 and every other pair at 3.
/// Its center is {0, 2, 3}.
inline SpaceData y4_data() {
  return space_data({"a", "b", "c", "d"}, {"3", "2", "3", "3", "2", "3"});
}

inline UltrametricSpace x4() { return UltrametricSpace::create(x4_data()); }
inline UltrametricSpace y4() { return UltrametricSpace::create(y4_data()); }

}  // namespace ultra::testing
