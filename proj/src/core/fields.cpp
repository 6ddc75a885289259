#include "core/fields.hpp"

#include <atomic>
#include <bit>
#include <cmath>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/umbrella.hpp"

namespace rwlab {

namespace {

// Positive finite doubles order the same as their bit patterns, so a CAS max
// on the bits is an exact, schedule-independent max-reduction.
inline void atomic_max_double(std::atomic<std::uint64_t>& slot, double value) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
  std::uint64_t cur = slot.load(std::memory_order_relaxed);
  while (bits > cur &&
         !slot.compare_exchange_weak(cur, bits, std::memory_order_relaxed)) {
  }
}

}  // namespace

LambdaField paint_lambda(const IntensityField& field, int threads) {
  const BoxSpec& box = field.box();
  if (box.margin < 1) config_error("paint_lambda requires margin >= 1");
  const std::size_t n = static_cast<std::size_t>(box.cells());

  std::vector<std::atomic<std::uint64_t>> acc1(n), acc2(n);
  for (std::size_t i = 0; i < n; ++i) {
    acc1[i].store(0, std::memory_order_relaxed);
    acc2[i].store(0, std::memory_order_relaxed);
  }

  const std::int64_t m = static_cast<std::int64_t>(box.margin);
  const std::int64_t gx0 = box.xmin() - m;
  const std::int64_t gy0 = box.ymin() - m;
  // Umbrellas extend up-right, so anchors above or right of the box are idle.
  const std::int64_t gx1 = box.xmax();
  const std::int64_t gy1 = box.ymax();
  const std::uint64_t gw = static_cast<std::uint64_t>(gx1 - gx0 + 1);
  const std::uint64_t gh = static_cast<std::uint64_t>(gy1 - gy0 + 1);
  const ClipRect clip{box.xmin(), box.xmax(), box.ymin(), box.ymax()};
  const Model model = field.params().model;

  const std::size_t total = static_cast<std::size_t>(gw * gh);
  parallel_for_blocks(total, 1u << 16, threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const Point anchor{gx0 + static_cast<std::int64_t>(s % gw),
                         gy0 + static_cast<std::int64_t>(s / gw)};
      const double u = field.unit(anchor);
      // Reject anchors whose umbrella cannot reach the box before inverting.
      const std::int64_t dx = box.xmin() - anchor.x;
      const std::int64_t dy = box.ymin() - anchor.y;
      // Axis rays cannot turn corners.
      if (model == Model::Straight && dx > 0 && dy > 0) continue;
      const std::int64_t dist = dx > dy ? dx : dy;
      if (dist > 1) {
        const double needed = field.params().survival(static_cast<double>(dist));
        if (u > needed) continue;
      }
      const double t = field.params().invert_survival(u);
      if (model == Model::Straight) {
        for_each_straight_point(anchor, t, 1, clip, [&](const Point& p) {
          atomic_max_double(acc1[box.index(p)], t);
        });
        for_each_straight_point(anchor, t, 2, clip, [&](const Point& p) {
          atomic_max_double(acc2[box.index(p)], t);
        });
      } else {
        for_each_diagonal_edge(anchor, t, clip, [&](const Edge& e) {
          auto& acc = e.axis == Axis::Vertical ? acc1 : acc2;
          atomic_max_double(acc[box.index(e.base)], t);
        });
      }
    }
  });

  LambdaField out;
  out.box = box;
  out.lambda1.resize(n);
  out.lambda2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.lambda1[i] = std::bit_cast<double>(acc1[i].load(std::memory_order_relaxed));
    out.lambda2[i] = std::bit_cast<double>(acc2[i].load(std::memory_order_relaxed));
    if (out.lambda1[i] <= 1.0 || out.lambda2[i] <= 1.0) {
      numeric_error("paint_lambda: inner point without covering umbrella at index " +
                    std::to_string(i));
    }
  }
  return out;
}

AncestralField ancestral_from_lambda(const LambdaField& lambda) {
  AncestralField out;
  out.box = lambda.box;
  const std::size_t n = lambda.lambda1.size();
  out.dir.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double l1 = lambda.lambda1[i];
    const double l2 = lambda.lambda2[i];
    if (l1 == l2) {
      out.dir[i] = 1;
      ++out.tiebreak_count;
    } else {
      out.dir[i] = l1 < l2 ? 1 : 2;
    }
  }
  return out;
}

HeightField heights_from_ancestral(const AncestralField& a) {
  HeightField out;
  out.box = a.box;
  const BoxSpec& box = a.box;
  const std::size_t n = a.dir.size();
  out.h.assign(n, 0);
  out.exact.assign(n, 0);
  const std::uint64_t w = box.width;
  // Row-major sweep: both candidate children of a site precede it.
  for (std::size_t j = 0; j < box.height; ++j) {
    for (std::size_t i = 0; i < w; ++i) {
      const std::size_t idx = j * w + i;
      std::uint32_t best = 0;
      if (i > 0 && a.dir[idx - 1] == 1) {
        const std::uint32_t c = out.h[idx - 1] + 1;
        if (c > best) best = c;
      }
      if (j > 0 && a.dir[idx - w] == 2) {
        const std::uint32_t c = out.h[idx - w] + 1;
        if (c > best) best = c;
      }
      out.h[idx] = best;
      const std::uint64_t depth = i < j ? i : j;
      out.exact[idx] = best < depth ? 1 : 0;
    }
  }
  return out;
}

std::vector<Edge> tree_edge_set(const AncestralField& a) {
  std::vector<Edge> edges;
  edges.reserve(a.dir.size());
  for (std::size_t idx = 0; idx < a.dir.size(); ++idx) {
    const Point p = a.box.at(idx);
    edges.push_back({p, a.dir[idx] == 1 ? Axis::Horizontal : Axis::Vertical});
  }
  return edges;
}

}  // namespace rwlab
