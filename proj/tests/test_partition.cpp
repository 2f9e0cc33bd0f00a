#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support/fixtures.hpp"
#include "ultra/errors.hpp"
#include "ultra/explore.hpp"
#include "ultra/partition.hpp"

using namespace ultra;
using testing::space_data;
using testing::x4;

namespace {

std::vector<std::vector<std::string>> named_parts(const UltrametricSpace& space,
                                                  const Partition& partition) {
  std::vector<std::vector<std::string>> out;
  for (const auto& part : partition.parts) {
    std::vector<std::string> names;
    for (std::size_t p : part) names.push_back(space.point(p));
    out.push_back(std::move(names));
  }
  return out;
}

std::vector<std::vector<std::size_t>> parts_by_name(
    const UltrametricSpace& space, const std::vector<std::vector<std::string>>& named) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& group : named) {
    std::vector<std::size_t> part;
    for (const auto& name : group) part.push_back(*space.index_of(name));
    out.push_back(std::move(part));
  }
  return out;
}

}  // namespace

TEST_CASE("X4 splits into {a,c} and {b,d} at separation 3") {
  const auto space = x4();
  const Partition partition = diametrical_partition(space);
  CHECK(partition.separation == Rational(3));
  CHECK(named_parts(space, partition) ==
        std::vector<std::vector<std::string>>{{"a", "c"}, {"b", "d"}});
}

TEST_CASE("two points split into singletons") {
  const auto space = UltrametricSpace::create(space_data({"p", "q"}, {"5/2"}));
  const Partition partition = diametrical_partition(space);
  CHECK(partition.separation == Rational(5, 2));
  CHECK(partition.parts == std::vector<std::vector<std::size_t>>{{0}, {1}});
}

TEST_CASE("an equilateral space is all singletons") {
  const auto space = UltrametricSpace::create(space_data({"x", "y", "z"}, {"1", "1", "1"}));
  const Partition partition = diametrical_partition(space);
  CHECK(partition.parts.size() == 3);
  CHECK(partition.separation == Rational(1));
}

TEST_CASE("partition of a singleton space is undefined") {
  const auto space = UltrametricSpace::create(space_data({"only"}, {}));
  CHECK_THROWS_AS(diametrical_partition(space), DomainError);
}

TEST_CASE("certificate accepts the true partition and rejects a shuffle") {
  const auto space = x4();
  CHECK(is_complete_multipartite_certificate(
      space, parts_by_name(space, {{"a", "c"}, {"b", "d"}})));
  // d(a,b) = 3 = diam inside a part.
  CHECK_FALSE(is_complete_multipartite_certificate(
      space, parts_by_name(space, {{"a", "b"}, {"c", "d"}})));
}

TEST_CASE("certificate accepts singleton parts of a two-point space") {
  const auto space = UltrametricSpace::create(space_data({"p", "q"}, {"1"}));
  CHECK(is_complete_multipartite_certificate(space, {{0}, {1}}));
}

TEST_CASE("certificate demands an exact cover") {
  const auto space = x4();
  CHECK_THROWS_AS(is_complete_multipartite_certificate(space, {{0, 1}, {2}}), DomainError);
  CHECK_THROWS_AS(is_complete_multipartite_certificate(space, {{0, 1}, {2, 3, 0}}), DomainError);
}

TEST_CASE("diametrical partitions always pass the certificate") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 100; ++round) {
    const auto space = random_space(rng, 20);
    const Partition partition = diametrical_partition(space);
    CHECK(is_complete_multipartite_certificate(space, partition.parts));
    CHECK(partition.parts.size() >= 2);
    CHECK(partition.separation == diameter(space));
  }
}

TEST_CASE("each part is the open ball of radius diam around any member") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 50; ++round) {
    const auto space = random_space(rng, 14);
    const Partition partition = diametrical_partition(space);
    for (const auto& part : partition.parts) {
      for (std::size_t member : part) {
        CHECK(open_ball(space, member, partition.separation) == part);
      }
    }
  }
}
