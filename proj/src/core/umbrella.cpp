#include "core/umbrella.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace rwlab {

namespace {

constexpr double kQuarterPi = 0.78539816339744830961;

struct DiagonalShape {
  double slope;        // tan(phi2), in [0, 1)
  std::int64_t xmax;   // columns 1..xmax
};

DiagonalShape diagonal_shape(double t) {
  const double phi = umbrella_angle(t);
  DiagonalShape s;
  s.slope = std::tan(phi);
  s.xmax = static_cast<std::int64_t>(std::floor(t * std::cos(phi)));
  if (s.xmax < 1) s.xmax = 1;
  return s;
}

inline std::int64_t column_height(std::int64_t k, double slope) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(k) * slope));
}

// Emits the lower staircase of the given shape in relative coordinates,
// horizontal edge first in each column, then the risers at the column's
// right end. fn(relative base, axis).
template <typename Fn>
void walk_lower_staircase(const DiagonalShape& s, Fn&& fn) {
  std::int64_t y = 0;
  for (std::int64_t k = 1; k <= s.xmax; ++k) {
    fn(Point{k - 1, y}, Axis::Horizontal);
    const std::int64_t yk = column_height(k, s.slope);
    for (std::int64_t j = y; j < yk; ++j) fn(Point{k, j}, Axis::Vertical);
    y = yk;
  }
}

}  // namespace

double umbrella_angle(double t) {
  if (t <= 1.0) return 0.0;
  const double lt = std::log(t);
  const double phi = kQuarterPi - 1.0 / lt;
  return phi > 0.0 ? phi : 0.0;
}

std::int64_t umbrella_reach(double t, Model model) {
  if (model == Model::Straight) return static_cast<std::int64_t>(std::floor(t));
  return std::max<std::int64_t>(2, diagonal_shape(t).xmax);
}

UmbrellaRaster rasterize_umbrella(const Point& anchor, double t, Model model) {
  if (!(t > 1.0)) config_error("umbrella intensity must exceed 1");
  UmbrellaRaster r;
  r.anchor = anchor;
  r.intensity = t;
  r.model = model;
  if (model == Model::Straight) {
    const std::int64_t len = static_cast<std::int64_t>(std::floor(t));
    r.side1_points.reserve(static_cast<std::size_t>(len));
    r.side2_points.reserve(static_cast<std::size_t>(len));
    for (std::int64_t k = 1; k <= len; ++k) {
      r.side1_points.push_back({anchor.x, anchor.y + k});
      r.side2_points.push_back({anchor.x + k, anchor.y});
    }
    return r;
  }
  const DiagonalShape s = diagonal_shape(t);
  // Fixed two-edge prefixes keep forced neighbour coverage for every t > 1.
  r.side2_edges.push_back({anchor, Axis::Horizontal});
  r.side2_edges.push_back({{anchor.x + 1, anchor.y}, Axis::Horizontal});
  r.side1_edges.push_back({anchor, Axis::Vertical});
  r.side1_edges.push_back({{anchor.x, anchor.y + 1}, Axis::Vertical});
  walk_lower_staircase(s, [&](const Point& rel, Axis axis) {
    const bool prefix_dup =
        axis == Axis::Horizontal && rel.y == 0 && (rel.x == 0 || rel.x == 1);
    if (prefix_dup) return;
    r.side2_edges.push_back({{anchor.x + rel.x, anchor.y + rel.y}, axis});
    // Mirror across the diagonal: swap coordinates and flip the axis.
    const Axis mirrored = axis == Axis::Horizontal ? Axis::Vertical : Axis::Horizontal;
    r.side1_edges.push_back({{anchor.x + rel.y, anchor.y + rel.x}, mirrored});
  });
  return r;
}

void for_each_straight_point(const Point& anchor, double t, int side, const ClipRect& clip,
                             const std::function<void(const Point&)>& fn) {
  const std::int64_t len = static_cast<std::int64_t>(std::floor(t));
  if (len < 1) return;
  if (side == 1) {
    if (anchor.x < clip.xlo || anchor.x > clip.xhi) return;
    const std::int64_t klo = std::max<std::int64_t>(1, clip.ylo - anchor.y);
    const std::int64_t khi = std::min(len, clip.yhi - anchor.y);
    for (std::int64_t k = klo; k <= khi; ++k) fn({anchor.x, anchor.y + k});
  } else {
    if (anchor.y < clip.ylo || anchor.y > clip.yhi) return;
    const std::int64_t klo = std::max<std::int64_t>(1, clip.xlo - anchor.x);
    const std::int64_t khi = std::min(len, clip.xhi - anchor.x);
    for (std::int64_t k = klo; k <= khi; ++k) fn({anchor.x + k, anchor.y});
  }
}

void for_each_diagonal_edge(const Point& anchor, double t, const ClipRect& clip,
                            const std::function<void(const Edge&)>& fn) {
  const DiagonalShape s = diagonal_shape(t);
  const auto emit = [&](std::int64_t rx, std::int64_t ry, Axis axis) {
    const std::int64_t x = anchor.x + rx;
    const std::int64_t y = anchor.y + ry;
    if (clip.contains(x, y)) fn({{x, y}, axis});
  };
  // Prefixes.
  emit(0, 0, Axis::Horizontal);
  emit(1, 0, Axis::Horizontal);
  emit(0, 0, Axis::Vertical);
  emit(0, 1, Axis::Vertical);

  // Lower staircase (side 2) and its mirror (side 1), prefix duplicates skipped.
  // Columns are clipped against both coordinate ranges of the rectangle; the
  // mirrored side swaps the roles of the two ranges.
  const auto column_range = [&](std::int64_t rel_xlo, std::int64_t rel_xhi,
                                std::int64_t rel_ylo, std::int64_t rel_yhi,
                                std::int64_t& klo, std::int64_t& khi) {
    klo = std::max<std::int64_t>(1, rel_xlo);  // H edge of column k has rel x = k-1
    khi = std::min(s.xmax, rel_xhi + 1);
    if (s.slope > 0.0) {
      // Column k touches rel rows [floor((k-1)m), floor(km)].
      const double lo_k = rel_ylo <= 0 ? 1.0 : static_cast<double>(rel_ylo) / s.slope;
      const double hi_k = (static_cast<double>(rel_yhi) + 1.0) / s.slope + 1.0;
      klo = std::max(klo, static_cast<std::int64_t>(std::floor(lo_k)));
      khi = std::min(khi, static_cast<std::int64_t>(std::ceil(hi_k)));
    } else if (rel_ylo > 0 || rel_yhi < 0) {
      khi = klo - 1;
    }
  };

  const std::int64_t rel_xlo = clip.xlo - anchor.x;
  const std::int64_t rel_xhi = clip.xhi - anchor.x;
  const std::int64_t rel_ylo = clip.ylo - anchor.y;
  const std::int64_t rel_yhi = clip.yhi - anchor.y;

  std::int64_t klo, khi;
  column_range(rel_xlo, rel_xhi, rel_ylo, rel_yhi, klo, khi);
  for (std::int64_t k = klo; k <= khi; ++k) {
    const std::int64_t yprev = column_height(k - 1, s.slope);
    const std::int64_t yk = column_height(k, s.slope);
    if (!(yprev == 0 && (k == 1 || k == 2))) emit(k - 1, yprev, Axis::Horizontal);
    for (std::int64_t j = yprev; j < yk; ++j) emit(k, j, Axis::Vertical);
  }

  // Mirror: relative (x,y) -> (y,x), horizontal <-> vertical.
  column_range(rel_ylo, rel_yhi, rel_xlo, rel_xhi, klo, khi);
  for (std::int64_t k = klo; k <= khi; ++k) {
    const std::int64_t yprev = column_height(k - 1, s.slope);
    const std::int64_t yk = column_height(k, s.slope);
    if (!(yprev == 0 && (k == 1 || k == 2))) emit(yprev, k - 1, Axis::Vertical);
    for (std::int64_t j = yprev; j < yk; ++j) emit(j, k, Axis::Horizontal);
  }
}

}  // namespace rwlab
