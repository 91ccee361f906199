#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "aggpack/hard_instance.hpp"

using namespace aggpack;

namespace {

std::vector<BigInt> big_vec(std::initializer_list<long long> values) {
  std::vector<BigInt> v;
  for (long long x : values) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("point set for dprime = 2") {
  const PointSet ps = point_set(2);
  CHECK(ps.k == 3);
  CHECK(ps.gamma == 12);
  REQUIRE(ps.points.size() == 4);
  CHECK(ps.points[0] == big_vec({0, 0, 0}));
  CHECK(ps.points[1] == big_vec({1, 0, 12}));
  CHECK(ps.points[2] == big_vec({0, 1, 144}));
  CHECK(ps.points[3] == big_vec({1, 1, 1728}));
}

TEST_CASE("point set for dprime = 1 drops the unit point") {
  const PointSet ps = point_set(1);
  CHECK(ps.k == 1);
  REQUIRE(ps.points.size() == 2);
  CHECK(ps.points[0] == big_vec({0, 0}));
  CHECK(ps.points[1] == big_vec({1, 4}));
  CHECK_THROWS_AS(point_set(0), std::invalid_argument);
}

TEST_CASE("points are sorted by infinity norm (4k)^i") {
  for (std::size_t dprime : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    const PointSet ps = point_set(dprime);
    for (std::size_t i = 0; i < ps.points.size(); ++i) {
      BigInt norm = 0;
      for (const auto& c : ps.points[i]) norm = std::max(norm, c);
      CHECK(norm == (i == 0 ? BigInt(0) : bpow(ps.gamma, i)));
    }
  }
}

TEST_CASE("target vector") {
  CHECK(target_vector(point_set(2)) == big_vec({2, 2, 1884}));
  CHECK(target_vector(point_set(1)) == big_vec({1, 4}));
  for (std::size_t dprime : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    const std::vector<BigInt> t = target_vector(point_set(dprime));
    const BigInt expected = bpow(BigInt(2), dprime - 1);
    for (std::size_t j = 0; j < dprime; ++j) CHECK(t[j] == expected);
  }
}

TEST_CASE("hard instance for dprime = 1") {
  const HardInstance hi = build_bp_instance(1);
  CHECK(hi.instance.num_item_types() == 16);
  CHECK(*hi.instance.bin_budget == 1);
  REQUIRE(hi.equality_configs.size() == 1);
  CHECK(hi.equality_configs[0] ==
        decimal_to_binary_trace(hi.params, BigInt(1)).to_vector());
  CHECK(hi.target_multiplicities == hi.equality_configs[0]);
}

TEST_CASE("hard instance for dprime = 2") {
  const HardInstance hi = build_bp_instance(2);
  CHECK(hi.instance.num_item_types() == 28);
  CHECK(hi.params.gamma == 12);
  CHECK(*hi.instance.bin_budget == 3);
  CHECK(hi.equality_configs.size() == 3);
  CHECK(dot(hi.instance.sizes, hi.target_multiplicities) ==
        BigInt(3) * hi.instance.capacity);
  CHECK_NOTHROW(hi.instance.validate());  // 0 < s_i <= C
  for (const auto& config : hi.equality_configs)
    CHECK(dot(hi.instance.sizes, config) == hi.instance.capacity);
}

TEST_CASE("hard instance for dprime = 3") {
  const HardInstance hi = build_bp_instance(3);
  CHECK(hi.instance.num_item_types() == 40);
  CHECK(hi.params.gamma == 28);
  CHECK(*hi.instance.bin_budget == 7);
  CHECK(hi.equality_configs.size() == 7);
  CHECK(dot(hi.instance.sizes, hi.target_multiplicities) ==
        BigInt(7) * hi.instance.capacity);
}

TEST_CASE("projection extracts the digits and the top remainder") {
  const GadgetParams params{2, BigInt(12)};
  CHECK(project(decimal_to_binary_trace(params, BigInt(3)).to_vector(), params) ==
        big_vec({1, 1, 1728}));
  CHECK(project(decimal_to_binary_trace(params, BigInt(1)).to_vector(), params) ==
        big_vec({1, 0, 12}));
  CHECK_THROWS_AS(project(SolutionVector{BigInt(1)}, params),
                  std::invalid_argument);
}

TEST_CASE("projected configurations equal the point set minus the origin") {
  for (std::size_t dprime : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
    const HardInstance hi = build_bp_instance(dprime);
    std::vector<std::vector<BigInt>> projected;
    for (const auto& config : hi.equality_configs)
      projected.push_back(project(config, hi.params));
    std::sort(projected.begin(), projected.end());

    const PointSet ps = point_set(dprime);
    std::vector<std::vector<BigInt>> expected(ps.points.begin() + 1,
                                              ps.points.end());
    std::sort(expected.begin(), expected.end());
    CHECK(projected == expected);
  }
}
