#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "core/errors.hpp"

namespace rwlab {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  std::int64_t diag() const { return x + y; }
  std::int64_t anti() const { return y - x; }
};

inline std::int64_t l1_dist(const Point& a, const Point& b) {
  return std::llabs(a.x - b.x) + std::llabs(a.y - b.y);
}

// Axis of a unit edge rooted at its base point: 1 = +e1 (horizontal), 2 = +e2 (vertical).
enum class Axis : std::uint8_t { Horizontal = 1, Vertical = 2 };

struct Edge {
  Point base;
  Axis axis = Axis::Horizontal;

  friend bool operator==(const Edge&, const Edge&) = default;
  Point other() const {
    return axis == Axis::Horizontal ? Point{base.x + 1, base.y} : Point{base.x, base.y + 1};
  }
};

// Inner box plus a generation margin on all four sides.
struct BoxSpec {
  Point origin;
  std::uint64_t width = 1;
  std::uint64_t height = 1;
  std::uint64_t margin = 0;

  void validate() const {
    if (width < 1 || height < 1) config_error("box width and height must be >= 1");
  }

  std::int64_t xmin() const { return origin.x; }
  std::int64_t ymin() const { return origin.y; }
  std::int64_t xmax() const { return origin.x + static_cast<std::int64_t>(width) - 1; }
  std::int64_t ymax() const { return origin.y + static_cast<std::int64_t>(height) - 1; }

  bool contains(const Point& p) const {
    return p.x >= xmin() && p.x <= xmax() && p.y >= ymin() && p.y <= ymax();
  }
  bool contains_generation(const Point& p) const {
    const auto m = static_cast<std::int64_t>(margin);
    return p.x >= xmin() - m && p.x <= xmax() + m && p.y >= ymin() - m && p.y <= ymax() + m;
  }

  std::uint64_t cells() const { return width * height; }

  // Row-major index of an inner-box point.
  std::size_t index(const Point& p) const {
    return static_cast<std::size_t>(p.y - ymin()) * width + static_cast<std::size_t>(p.x - xmin());
  }
  Point at(std::size_t idx) const {
    return {xmin() + static_cast<std::int64_t>(idx % width),
            ymin() + static_cast<std::int64_t>(idx / width)};
  }

  // L1 clearance to the lower/left inner-box boundary.
  std::int64_t depth(const Point& p) const {
    const std::int64_t dx = p.x - xmin();
    const std::int64_t dy = p.y - ymin();
    return dx < dy ? dx : dy;
  }

  friend bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

}  // namespace rwlab
