#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "core/conductance.hpp"
#include "core/fields.hpp"
#include "core/intensity.hpp"
#include "core/walker.hpp"

namespace rwlab {

// Lazily materialized tree environment for walks whose range exceeds any
// storable box. The lattice is realized in square tiles along the walker's
// corridor:
//   - anchors within one tile of a new tile are painted directly;
//   - farther anchors are found by a once-per-chunk discovery scan that keeps
//     only umbrellas long enough to cross tile boundaries (reach >= tile),
//     up to a configurable depth, mirroring the margin truncation of the
//     materialized painter;
//   - heights run the same child-max dynamic program per tile, with inflow
//     from already-materialized neighbour tiles, so chains accumulate exactly
//     along the corridor.
// Tiles are immutable once built and are evicted far behind the frontier.
// Every query is a pure function of (params, option set, query history), so
// a fixed walk reproduces bit-identically.
class LazyForestEnv : public EnvView {
public:
  struct Options {
    std::uint32_t tile_bits = 8;       // tile side = 1 << tile_bits
    std::int64_t deep_margin = 4096;   // discovery depth below/left of each tile
    std::int64_t keep_window = 8192;   // diag distance behind frontier before eviction
  };

  LazyForestEnv(const IntensityParams& env_params, const ConductanceParams& cond_params,
                const BoxSpec& walk_box, const Options& opt);
  ~LazyForestEnv() override;

  std::array<double, 4> logw4(const Point& x) override;
  bool interior(const Point& x) const override;
  int tree_dir(const Point& x) override;
  const BoxSpec& box() const override { return box_; }

  std::int64_t height_at(const Point& x);

  // Instrumentation.
  std::uint64_t tiles_built() const { return tiles_built_; }
  std::uint64_t chunks_scanned() const { return chunks_scanned_; }

private:
  struct Tile;
  struct LongAnchor {
    std::int64_t x, y;
    double intensity;
  };

  Tile& tile_at(std::int64_t tx, std::int64_t ty);
  void materialize(Tile& tile, std::int64_t tx, std::int64_t ty);
  void scan_chunk(std::int64_t cx, std::int64_t cy);
  void evict_behind(std::int64_t frontier_diag, std::uint64_t keep_key);
  const Tile* find_tile(std::int64_t tx, std::int64_t ty) const;

  IntensityParams env_params_;
  ConductanceParams cond_params_;
  BoxSpec box_;
  Options opt_;
  std::int64_t tile_size_;
  std::int64_t margin_tiles_;
  double keep_survival_;  // survival threshold marking registry-worthy anchors
  SiteHash hash_;

  std::unordered_map<std::uint64_t, std::unique_ptr<Tile>> tiles_;
  std::unordered_set<std::uint64_t> scanned_;
  std::unordered_map<std::uint64_t, std::vector<LongAnchor>> registry_;

  // Single-entry tile cache for the walker's hot path.
  std::int64_t cached_tx_ = INT64_MIN, cached_ty_ = INT64_MIN;
  Tile* cached_tile_ = nullptr;

  std::int64_t frontier_diag_ = INT64_MIN;
  std::uint64_t tiles_built_ = 0;
  std::uint64_t chunks_scanned_ = 0;
  std::uint64_t evict_countdown_ = 256;
};

}  // namespace rwlab
