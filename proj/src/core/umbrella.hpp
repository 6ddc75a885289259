#pragma once

#include <functional>
#include <vector>

#include "core/geometry.hpp"
#include "core/intensity.hpp"

namespace rwlab {

// Two-sided barrier anchored at a site. Straight umbrellas are axis rays of
// covered points; diagonal umbrellas are staircase approximations of open
// segments at angle pi/4 -/+ 1/log(t), stored as covered unit edges.
struct UmbrellaRaster {
  Point anchor;
  double intensity = 0.0;
  Model model = Model::Straight;
  std::vector<Point> side1_points;  // straight: vertical ray, blocks e1
  std::vector<Point> side2_points;  // straight: horizontal ray, blocks e2
  std::vector<Edge> side1_edges;    // diagonal: upper staircase
  std::vector<Edge> side2_edges;    // diagonal: lower staircase
};

// Angle of the lower diagonal side with the x-axis, clamped at zero.
double umbrella_angle(double t);

UmbrellaRaster rasterize_umbrella(const Point& anchor, double t, Model model);

// Chebyshev reach of the raster from its anchor (covers the bounding box
// [anchor, anchor + (reach, reach)]).
std::int64_t umbrella_reach(double t, Model model);

struct ClipRect {
  std::int64_t xlo, xhi, ylo, yhi;  // inclusive
  bool contains(std::int64_t x, std::int64_t y) const {
    return x >= xlo && x <= xhi && y >= ylo && y <= yhi;
  }
};

// Enumerate covered points (straight model) clipped to a rectangle.
// side is 1 or 2; fn(point).
void for_each_straight_point(const Point& anchor, double t, int side, const ClipRect& clip,
                             const std::function<void(const Point&)>& fn);

// Enumerate covered edges (diagonal model, both sides plus prefixes) whose
// base lies in the rectangle; fn(edge).
void for_each_diagonal_edge(const Point& anchor, double t, const ClipRect& clip,
                            const std::function<void(const Edge&)>& fn);

}  // namespace rwlab
