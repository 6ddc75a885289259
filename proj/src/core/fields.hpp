#pragma once

#include <cstdint>
#include <vector>

#include "core/geometry.hpp"
#include "core/intensity.hpp"

namespace rwlab {

// Per-site strengths of the strongest umbrella blocking each direction,
// over the inner box only.
struct LambdaField {
  BoxSpec box;
  std::vector<double> lambda1;
  std::vector<double> lambda2;
};

// Parent direction a(x) = x + e_dir(x), dir in {1,2}. Exact floating-point
// ties resolve to direction 1 and are counted.
struct AncestralField {
  BoxSpec box;
  std::vector<std::uint8_t> dir;
  std::uint64_t tiebreak_count = 0;
};

// Longest in-box descendant chain per site, with a certification mask:
// exact(x) holds iff h(x) is provably unaffected by box truncation.
struct HeightField {
  BoxSpec box;
  std::vector<std::uint32_t> h;
  std::vector<std::uint8_t> exact;
};

// Max-paints every generated umbrella into the inner box. Bit-identical
// output for any thread count or traversal order.
LambdaField paint_lambda(const IntensityField& field, int threads = 0);

AncestralField ancestral_from_lambda(const LambdaField& lambda);

HeightField heights_from_ancestral(const AncestralField& a);

std::vector<Edge> tree_edge_set(const AncestralField& a);

}  // namespace rwlab
