#pragma once

#include <string>

#include "core/conductance.hpp"
#include "core/fields.hpp"
#include "core/intensity.hpp"

namespace rwlab {

// Little-endian binary snapshots.
// Environment: magic "UMBR1", kind byte, theta f64, n0 u32, seed u64,
//   origin_x i64, origin_y i64, width u64, height u64, margin u64;
//   payload row-major: h u32, direction u8 (1|2), exact u8 (0|1).
// Conductance: magic "COND1", same envelope; payload f64 log-weights,
//   horizontal edges ((w-1) x h) then vertical (w x (h-1)), row-major.
// Kind byte: 0 = straight tree, 1 = diagonal tree, 2 = iid control
// (theta then carries beta and n0 is zero).

inline constexpr std::uint8_t kSnapshotKindIid = 2;

struct EnvSnapshot {
  std::uint8_t kind = 0;
  double theta = 0.0;
  std::uint32_t n0 = 0;
  std::uint64_t seed = 0;
  BoxSpec box;
  HeightField heights;
  AncestralField ancestral;
};

struct CondSnapshot {
  std::uint8_t kind = 0;
  double theta = 0.0;
  std::uint32_t n0 = 0;
  std::uint64_t seed = 0;
  ConductanceField field;
};

void write_env_snapshot(const std::string& path, const IntensityParams& params,
                        const HeightField& heights, const AncestralField& ancestral);
EnvSnapshot read_env_snapshot(const std::string& path);

void write_cond_snapshot(const std::string& path, std::uint8_t kind, double theta,
                         std::uint32_t n0, std::uint64_t seed, const ConductanceField& field);
CondSnapshot read_cond_snapshot(const std::string& path);

}  // namespace rwlab
