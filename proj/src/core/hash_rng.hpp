#pragma once

#include <cstdint>

#include "core/geometry.hpp"

namespace rwlab {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Purpose tags keep the environment, edge and walker streams decoupled.
enum class StreamTag : std::uint64_t {
  Intensity = 0x1ed5f00d5eedull,
  IidEdge = 0x0edbe5eedull,
  Walk = 0x3a1cc5eedull,
};

inline std::uint64_t derive_stream(std::uint64_t seed, StreamTag tag) {
  return mix64(seed ^ static_cast<std::uint64_t>(tag));
}

// Counter-based site hash: pre-mix the stream seed once, then two rounds per site.
class SiteHash {
public:
  explicit SiteHash(std::uint64_t stream_seed) : base_(mix64(stream_seed)) {}

  std::uint64_t bits(std::int64_t x, std::int64_t y) const {
    std::uint64_t h = mix64(base_ ^ static_cast<std::uint64_t>(x));
    return mix64(h ^ static_cast<std::uint64_t>(y));
  }
  std::uint64_t bits(const Point& p) const { return bits(p.x, p.y); }

  std::uint64_t bits_edge(const Edge& e) const {
    return mix64(bits(e.base) ^ (static_cast<std::uint64_t>(e.axis) * 0x9E3779B97F4A7C15ull));
  }

private:
  std::uint64_t base_;
};

// Map 64 bits to the open interval (0, 1); both endpoints are excluded.
inline double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Sequential generator for walk sampling: one draw per step.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return mix64(state_++); }
  double next_unit() { return unit_open(next()); }

private:
  std::uint64_t state_;
};

}  // namespace rwlab
