#pragma once

// Independent brute-force oracles for the test suites. These deliberately
// avoid the production painting/DP code paths: coverage is evaluated from
// materialized rasters and heights by exhaustive chain search.

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "core/fields.hpp"
#include "core/intensity.hpp"
#include "core/umbrella.hpp"

namespace rwlab::testing {

inline std::uint64_t cell_key(const Point& p) {
  return (static_cast<std::uint64_t>(p.x + (1ll << 31)) << 32) |
         static_cast<std::uint64_t>(p.y + (1ll << 31));
}

// O(sites x anchors x raster) reference for paint_lambda.
inline LambdaField brute_lambda(const IntensityField& field) {
  const BoxSpec& box = field.box();
  LambdaField out;
  out.box = box;
  const std::size_t n = static_cast<std::size_t>(box.cells());
  out.lambda1.assign(n, 0.0);
  out.lambda2.assign(n, 0.0);
  const std::int64_t m = static_cast<std::int64_t>(box.margin);
  for (std::int64_t ay = box.ymin() - m; ay <= box.ymax() + m; ++ay) {
    for (std::int64_t ax = box.xmin() - m; ax <= box.xmax() + m; ++ax) {
      const Point anchor{ax, ay};
      const double t = field.value(anchor);
      const UmbrellaRaster r = rasterize_umbrella(anchor, t, field.params().model);
      if (field.params().model == Model::Straight) {
        for (const Point& p : r.side1_points) {
          if (box.contains(p) && t > out.lambda1[box.index(p)]) out.lambda1[box.index(p)] = t;
        }
        for (const Point& p : r.side2_points) {
          if (box.contains(p) && t > out.lambda2[box.index(p)]) out.lambda2[box.index(p)] = t;
        }
      } else {
        for (const auto* side : {&r.side1_edges, &r.side2_edges}) {
          for (const Edge& e : *side) {
            if (!box.contains(e.base)) continue;
            auto& lam = e.axis == Axis::Vertical ? out.lambda1 : out.lambda2;
            if (t > lam[box.index(e.base)]) lam[box.index(e.base)] = t;
          }
        }
      }
    }
  }
  return out;
}

// Longest descendant chain by exhaustive depth-first search.
inline std::uint32_t brute_height(const AncestralField& a, const Point& x) {
  std::uint32_t best = 0;
  const Point children[2] = {{x.x - 1, x.y}, {x.x, x.y - 1}};
  const std::uint8_t want[2] = {1, 2};
  for (int c = 0; c < 2; ++c) {
    const Point& y = children[c];
    if (!a.box.contains(y)) continue;
    if (a.dir[a.box.index(y)] != want[c]) continue;
    const std::uint32_t sub = brute_height(a, y) + 1;
    if (sub > best) best = sub;
  }
  return best;
}

// Union-find cycle detector over undirected edges.
class UnionFind {
public:
  std::size_t find(std::size_t i) {
    ensure(i);
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  // Returns false if the edge closes a cycle.
  bool unite(std::size_t a, std::size_t b) {
    const std::size_t ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent_[ra] = rb;
    return true;
  }

private:
  void ensure(std::size_t i) {
    while (parent_.size() <= i) parent_.push_back(parent_.size());
  }
  std::vector<std::size_t> parent_;
};

}  // namespace rwlab::testing
