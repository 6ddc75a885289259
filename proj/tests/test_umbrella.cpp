#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <unordered_set>

#include "core/errors.hpp"
#include "core/hash_rng.hpp"
#include "core/umbrella.hpp"
#include "oracles.hpp"

using namespace rwlab;

namespace {

std::set<std::pair<std::int64_t, std::int64_t>> point_set(const std::vector<Point>& pts) {
  std::set<std::pair<std::int64_t, std::int64_t>> s;
  for (const Point& p : pts) s.insert({p.x, p.y});
  return s;
}

}  // namespace

TEST_CASE("straight sides are the axis rays") {
  const UmbrellaRaster r = rasterize_umbrella({0, 0}, 3.0, Model::Straight);
  CHECK(point_set(r.side1_points) ==
        std::set<std::pair<std::int64_t, std::int64_t>>{{0, 1}, {0, 2}, {0, 3}});
  CHECK(point_set(r.side2_points) ==
        std::set<std::pair<std::int64_t, std::int64_t>>{{1, 0}, {2, 0}, {3, 0}});

  const UmbrellaRaster r2 = rasterize_umbrella({5, 5}, 2.5, Model::Straight);
  CHECK(point_set(r2.side2_points) ==
        std::set<std::pair<std::int64_t, std::int64_t>>{{6, 5}, {7, 5}});
  CHECK(r2.side1_points.size() == 2);  // floor(2.5) per side
}

TEST_CASE("umbrella intensity must exceed one") {
  CHECK_THROWS_AS(rasterize_umbrella({0, 0}, 1.0, Model::Straight), Error);
  CHECK_THROWS_AS(rasterize_umbrella({0, 0}, 0.5, Model::Diagonal), Error);
}

TEST_CASE("diagonal staircase geometry at t = e^2") {
  const double t = std::exp(2.0);
  // Geometry oracle: recompute the angle, slope and floors directly.
  const double phi = std::atan(1.0) * 4.0 / 4.0 - 0.5;  // pi/4 - 1/log(e^2)
  CHECK(umbrella_angle(t) == doctest::Approx(phi).epsilon(1e-15));
  const double slope = std::tan(phi);
  CHECK(slope == doctest::Approx(0.2936).epsilon(1e-3));
  const double endpoint_x = t * std::cos(phi);
  const double endpoint_y = t * std::sin(phi);
  CHECK(endpoint_x == doctest::Approx(7.09).epsilon(1e-2));
  CHECK(endpoint_y == doctest::Approx(2.08).epsilon(1e-2));

  const UmbrellaRaster r = rasterize_umbrella({0, 0}, t, Model::Diagonal);
  // Column heights floor(k * slope) for k = 1..7.
  const std::int64_t expected_heights[7] = {0, 0, 0, 1, 1, 1, 2};
  for (int k = 1; k <= 7; ++k) {
    CHECK(static_cast<std::int64_t>(std::floor(k * slope)) == expected_heights[k - 1]);
  }
  // Horizontal edges: bases (k-1, floor((k-1) slope)); risers where heights jump.
  std::set<std::pair<std::pair<std::int64_t, std::int64_t>, int>> edges;
  for (const Edge& e : r.side2_edges) {
    edges.insert({{e.base.x, e.base.y}, static_cast<int>(e.axis)});
  }
  std::set<std::pair<std::pair<std::int64_t, std::int64_t>, int>> expected;
  std::int64_t y = 0;
  for (std::int64_t k = 1; k <= 7; ++k) {
    expected.insert({{k - 1, y}, 1});
    const std::int64_t yk = static_cast<std::int64_t>(std::floor(static_cast<double>(k) * slope));
    for (std::int64_t j = y; j < yk; ++j) expected.insert({{k, j}, 2});
    y = yk;
  }
  CHECK(edges == expected);
  CHECK(r.side2_edges.size() == 9);  // 7 horizontal + 2 risers, within 2 of ceil(t) = 8

  // Mirror: side1 is side2 with coordinates swapped and axes flipped.
  std::set<std::pair<std::pair<std::int64_t, std::int64_t>, int>> mirrored;
  for (const Edge& e : r.side2_edges) {
    mirrored.insert({{e.base.y, e.base.x}, e.axis == Axis::Horizontal ? 2 : 1});
  }
  std::set<std::pair<std::pair<std::int64_t, std::int64_t>, int>> side1;
  for (const Edge& e : r.side1_edges) {
    side1.insert({{e.base.x, e.base.y}, static_cast<int>(e.axis)});
  }
  CHECK(side1 == mirrored);
}

TEST_CASE("prefix edges are always present") {
  for (const double t : {1.0001, 1.5, 2.0, 3.0, 10.0, 123.4, 1e4}) {
    const UmbrellaRaster r = rasterize_umbrella({0, 0}, t, Model::Diagonal);
    std::unordered_set<std::uint64_t> s2, s1;
    for (const Edge& e : r.side2_edges) {
      if (e.axis == Axis::Horizontal) s2.insert(testing::cell_key(e.base));
    }
    for (const Edge& e : r.side1_edges) {
      if (e.axis == Axis::Vertical) s1.insert(testing::cell_key(e.base));
    }
    CHECK(s2.count(testing::cell_key({0, 0})) == 1);
    CHECK(s2.count(testing::cell_key({1, 0})) == 1);
    CHECK(s1.count(testing::cell_key({0, 0})) == 1);
    CHECK(s1.count(testing::cell_key({0, 1})) == 1);
  }
}

TEST_CASE("angle clamps to zero at small intensities") {
  CHECK(umbrella_angle(2.0) == 0.0);
  CHECK(umbrella_angle(std::exp(1.0)) == 0.0);
  CHECK(umbrella_angle(std::exp(4.0 / 3.141592653589793) + 0.1) > 0.0);
  // Clamped umbrellas are pure axis runs.
  const UmbrellaRaster r = rasterize_umbrella({0, 0}, 2.9, Model::Diagonal);
  for (const Edge& e : r.side2_edges) {
    CHECK(e.base.y == 0);
    CHECK(e.axis == Axis::Horizontal);
  }
}

TEST_CASE("straight edge count within one of ceil(t)") {
  for (const double t : {1.2, 2.0, 5.7, 33.3, 1000.0}) {
    const UmbrellaRaster r = rasterize_umbrella({0, 0}, t, Model::Straight);
    CHECK(std::llabs(static_cast<long long>(r.side1_points.size()) -
                     static_cast<long long>(std::ceil(t))) <= 1);
  }
}

TEST_CASE("clipped enumeration agrees with the materialized raster") {
  SiteHash h(99);
  for (int trial = 0; trial < 200; ++trial) {
    const double u = unit_open(h.bits(trial, 7 * trial + 1));
    const double t = 1.0 + 60.0 * u * u;
    const Point anchor{static_cast<std::int64_t>(trial % 13) - 6,
                       static_cast<std::int64_t>(trial % 7) - 3};
    const ClipRect clip{anchor.x - 2, anchor.x + 25, anchor.y - 2, anchor.y + 25};

    const UmbrellaRaster r = rasterize_umbrella(anchor, t, Model::Diagonal);
    std::multiset<std::tuple<std::int64_t, std::int64_t, int>> expected;
    for (const auto* side : {&r.side1_edges, &r.side2_edges}) {
      for (const Edge& e : *side) {
        if (clip.contains(e.base.x, e.base.y)) {
          expected.insert({e.base.x, e.base.y, static_cast<int>(e.axis)});
        }
      }
    }
    std::multiset<std::tuple<std::int64_t, std::int64_t, int>> got;
    for_each_diagonal_edge(anchor, t, clip, [&](const Edge& e) {
      got.insert({e.base.x, e.base.y, static_cast<int>(e.axis)});
    });
    // The enumerator may not repeat edges the raster lists once.
    CHECK(std::set(got.begin(), got.end()).size() == got.size());
    CHECK(std::set(expected.begin(), expected.end()) == std::set(got.begin(), got.end()));

    const UmbrellaRaster rs = rasterize_umbrella(anchor, t, Model::Straight);
    std::set<std::pair<std::int64_t, std::int64_t>> exp1, got1;
    for (const Point& p : rs.side1_points) {
      if (clip.contains(p.x, p.y)) exp1.insert({p.x, p.y});
    }
    for_each_straight_point(anchor, t, 1, clip,
                            [&](const Point& p) { got1.insert({p.x, p.y}); });
    CHECK(exp1 == got1);
  }
}

TEST_CASE("reach bounds the raster") {
  for (const double t : {1.5, 4.0, 77.7, 4096.0}) {
    for (const Model m : {Model::Straight, Model::Diagonal}) {
      const std::int64_t reach = umbrella_reach(t, m);
      const UmbrellaRaster r = rasterize_umbrella({0, 0}, t, m);
      for (const Point& p : r.side1_points) {
        CHECK(p.x <= reach);
        CHECK(p.y <= reach);
      }
      for (const auto* side : {&r.side1_edges, &r.side2_edges}) {
        for (const Edge& e : *side) {
          CHECK(e.base.x <= reach);
          CHECK(e.base.y <= reach);
        }
      }
    }
  }
}
