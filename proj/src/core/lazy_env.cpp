#include "core/lazy_env.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/umbrella.hpp"

namespace rwlab {

namespace {

constexpr std::int64_t kCoordBias = 1ll << 31;

inline std::uint64_t pack_key(std::int64_t a, std::int64_t b) {
  return (static_cast<std::uint64_t>(a + kCoordBias) << 32) |
         static_cast<std::uint64_t>(b + kCoordBias);
}

}  // namespace

struct LazyForestEnv::Tile {
  std::int64_t x0, y0;  // absolute origin
  std::vector<std::int32_t> h;
  std::vector<std::uint8_t> dir;
};

LazyForestEnv::LazyForestEnv(const IntensityParams& env_params,
                             const ConductanceParams& cond_params, const BoxSpec& walk_box,
                             const Options& opt)
    : env_params_(env_params),
      cond_params_(cond_params),
      box_(walk_box),
      opt_(opt),
      tile_size_(1ll << opt.tile_bits),
      hash_(derive_stream(env_params.seed, StreamTag::Intensity)) {
  env_params_.validate();
  cond_params_.validate();
  box_.validate();
  margin_tiles_ = (opt_.deep_margin + tile_size_ - 1) / tile_size_;
  keep_survival_ = env_params_.survival(static_cast<double>(tile_size_));
}

LazyForestEnv::~LazyForestEnv() = default;

bool LazyForestEnv::interior(const Point& x) const {
  return x.x > box_.xmin() && x.x < box_.xmax() && x.y > box_.ymin() && x.y < box_.ymax();
}

const LazyForestEnv::Tile* LazyForestEnv::find_tile(std::int64_t tx, std::int64_t ty) const {
  const auto it = tiles_.find(pack_key(tx, ty));
  return it == tiles_.end() ? nullptr : it->second.get();
}

LazyForestEnv::Tile& LazyForestEnv::tile_at(std::int64_t tx, std::int64_t ty) {
  if (tx == cached_tx_ && ty == cached_ty_) return *cached_tile_;
  const std::uint64_t key = pack_key(tx, ty);
  auto& slot = tiles_[key];
  if (!slot) {
    slot = std::make_unique<Tile>();
    materialize(*slot, tx, ty);
    const std::int64_t diag = (tx + ty) * tile_size_;
    if (diag > frontier_diag_) frontier_diag_ = diag;
    if (--evict_countdown_ == 0) {
      evict_countdown_ = 256;
      evict_behind(frontier_diag_, key);
    }
  }
  Tile* t = tiles_[key].get();
  cached_tx_ = tx;
  cached_ty_ = ty;
  cached_tile_ = t;
  return *t;
}

void LazyForestEnv::scan_chunk(std::int64_t cx, std::int64_t cy) {
  const std::uint64_t key = pack_key(cx, cy);
  if (!scanned_.insert(key).second) return;
  ++chunks_scanned_;
  const std::int64_t x0 = cx * tile_size_;
  const std::int64_t y0 = cy * tile_size_;
  std::vector<LongAnchor> found;
  for (std::int64_t j = 0; j < tile_size_; ++j) {
    for (std::int64_t i = 0; i < tile_size_; ++i) {
      const double u = unit_open(hash_.bits(x0 + i, y0 + j));
      if (u > keep_survival_) continue;
      const double t = env_params_.invert_survival(u);
      found.push_back({x0 + i, y0 + j, t});
    }
  }
  if (!found.empty()) registry_[key] = std::move(found);
}

void LazyForestEnv::materialize(Tile& tile, std::int64_t tx, std::int64_t ty) {
  ++tiles_built_;
  const std::int64_t X0 = tx * tile_size_;
  const std::int64_t Y0 = ty * tile_size_;
  const std::int64_t X1 = X0 + tile_size_ - 1;
  const std::int64_t Y1 = Y0 + tile_size_ - 1;
  tile.x0 = X0;
  tile.y0 = Y0;
  const std::size_t n = static_cast<std::size_t>(tile_size_ * tile_size_);

  std::vector<double> lam1(n, 0.0), lam2(n, 0.0);
  const ClipRect clip{X0, X1, Y0, Y1};
  const Model model = env_params_.model;
  const std::int64_t w = tile_size_;
  const auto cell = [&](const Point& p) {
    return static_cast<std::size_t>(p.y - Y0) * static_cast<std::size_t>(w) +
           static_cast<std::size_t>(p.x - X0);
  };

  const auto paint = [&](const Point& anchor, double t) {
    if (model == Model::Straight) {
      for_each_straight_point(anchor, t, 1, clip, [&](const Point& p) {
        double& slot = lam1[cell(p)];
        if (t > slot) slot = t;
      });
      for_each_straight_point(anchor, t, 2, clip, [&](const Point& p) {
        double& slot = lam2[cell(p)];
        if (t > slot) slot = t;
      });
    } else {
      for_each_diagonal_edge(anchor, t, clip, [&](const Edge& e) {
        double& slot = e.axis == Axis::Vertical ? lam1[cell(e.base)] : lam2[cell(e.base)];
        if (t > slot) slot = t;
      });
    }
  };

  // Long umbrellas from the discovery registry, up to the deep margin.
  for (std::int64_t cy = ty - margin_tiles_; cy <= ty; ++cy) {
    for (std::int64_t cx = tx - margin_tiles_; cx <= tx; ++cx) {
      scan_chunk(cx, cy);
      const auto it = registry_.find(pack_key(cx, cy));
      if (it == registry_.end()) continue;
      for (const LongAnchor& a : it->second) {
        const std::int64_t reach = umbrella_reach(a.intensity, model);
        if (a.x + reach < X0 || a.y + reach < Y0) continue;
        if (model == Model::Straight && a.x < X0 && a.y < Y0) continue;
        paint({a.x, a.y}, a.intensity);
      }
    }
  }

  // All anchors within one tile down-left, whatever their strength.
  for (std::int64_t ay = Y0 - tile_size_; ay <= Y1; ++ay) {
    for (std::int64_t ax = X0 - tile_size_; ax <= X1; ++ax) {
      const double u = unit_open(hash_.bits(ax, ay));
      const std::int64_t dx = X0 - ax;
      const std::int64_t dy = Y0 - ay;
      if (model == Model::Straight && dx > 0 && dy > 0) continue;
      const std::int64_t dist = dx > dy ? dx : dy;
      if (dist > 1 && u > env_params_.survival(static_cast<double>(dist))) continue;
      paint({ax, ay}, env_params_.invert_survival(u));
    }
  }

  // Direction and height DP, with inflow from existing neighbour tiles.
  tile.dir.resize(n);
  tile.h.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double l1 = lam1[i];
    const double l2 = lam2[i];
    if (l1 <= 1.0 || l2 <= 1.0) {
      numeric_error("lazy environment: uncovered cell during tile materialization");
    }
    tile.dir[i] = l1 <= l2 ? 1 : 2;
  }

  const Tile* left = find_tile(tx - 1, ty);
  const Tile* below = find_tile(tx, ty - 1);
  for (std::int64_t j = 0; j < tile_size_; ++j) {
    for (std::int64_t i = 0; i < tile_size_; ++i) {
      const std::size_t idx =
          static_cast<std::size_t>(j) * static_cast<std::size_t>(w) + static_cast<std::size_t>(i);
      std::int32_t best = 0;
      if (i > 0) {
        if (tile.dir[idx - 1] == 1 && tile.h[idx - 1] + 1 > best) best = tile.h[idx - 1] + 1;
      } else if (left != nullptr) {
        const std::size_t lidx = static_cast<std::size_t>(j) * static_cast<std::size_t>(w) +
                                 static_cast<std::size_t>(w - 1);
        if (left->dir[lidx] == 1 && left->h[lidx] + 1 > best) best = left->h[lidx] + 1;
      }
      if (j > 0) {
        const std::size_t bidx = idx - static_cast<std::size_t>(w);
        if (tile.dir[bidx] == 2 && tile.h[bidx] + 1 > best) best = tile.h[bidx] + 1;
      } else if (below != nullptr) {
        const std::size_t bidx =
            static_cast<std::size_t>(w - 1) * static_cast<std::size_t>(w) +
            static_cast<std::size_t>(i);
        if (below->dir[bidx] == 2 && below->h[bidx] + 1 > best) best = below->h[bidx] + 1;
      }
      tile.h[idx] = best;
    }
  }
}

void LazyForestEnv::evict_behind(std::int64_t frontier_diag, std::uint64_t keep_key) {
  const std::int64_t tile_cut = frontier_diag - opt_.keep_window;
  for (auto it = tiles_.begin(); it != tiles_.end();) {
    const Tile& t = *it->second;
    if (it->first != keep_key && t.x0 + t.y0 + 2 * tile_size_ < tile_cut) {
      it = tiles_.erase(it);
    } else {
      ++it;
    }
  }
  cached_tx_ = cached_ty_ = INT64_MIN;
  cached_tile_ = nullptr;
  const std::int64_t chunk_cut =
      frontier_diag - opt_.keep_window - 2 * (opt_.deep_margin + 2 * tile_size_);
  const auto chunk_old = [&](std::uint64_t key) {
    const std::int64_t cx = static_cast<std::int64_t>(key >> 32) - kCoordBias;
    const std::int64_t cy = static_cast<std::int64_t>(key & 0xffffffffull) - kCoordBias;
    return (cx + cy + 2) * tile_size_ < chunk_cut;
  };
  for (auto it = registry_.begin(); it != registry_.end();) {
    it = chunk_old(it->first) ? registry_.erase(it) : std::next(it);
  }
  for (auto it = scanned_.begin(); it != scanned_.end();) {
    it = chunk_old(*it) ? scanned_.erase(it) : std::next(it);
  }
}

std::array<double, 4> LazyForestEnv::logw4(const Point& x) {
  const auto shift = static_cast<std::int64_t>(opt_.tile_bits);
  const auto lookup = [&](std::int64_t px, std::int64_t py, int& dir) -> std::int64_t {
    Tile& t = tile_at(px >> shift, py >> shift);
    const std::size_t idx =
        static_cast<std::size_t>(py - t.y0) * static_cast<std::size_t>(tile_size_) +
        static_cast<std::size_t>(px - t.x0);
    dir = t.dir[idx];
    return t.h[idx];
  };
  // Tree edges incident to x: the parent edge above/right of x and the edges
  // from children below/left pointing at x. All other conductances are one.
  // Child heights are clamped below h(x): the true field satisfies
  // h(x) >= h(child)+1, but tiles materialized before their down-left
  // neighbours can advertise stale larger child heights at seams, which
  // would pin the walker onto a single edge.
  int dirx, dirl, dirb;
  const std::int64_t hx = lookup(x.x, x.y, dirx);
  const std::int64_t hl = lookup(x.x - 1, x.y, dirl);
  const std::int64_t hb = lookup(x.x, x.y - 1, dirb);
  const auto weight = [&](std::int64_t h) {
    return std::pow(static_cast<double>(h) + 1.0, cond_params_.A);
  };
  const std::int64_t child_cap = hx > 0 ? hx - 1 : 0;
  std::array<double, 4> lw{0.0, 0.0, 0.0, 0.0};
  lw[dirx == 1 ? 0 : 1] = weight(hx);
  if (dirl == 1) lw[2] = weight(hl < child_cap ? hl : child_cap);
  if (dirb == 2) lw[3] = weight(hb < child_cap ? hb : child_cap);
  return lw;
}

int LazyForestEnv::tree_dir(const Point& x) {
  const auto shift = static_cast<std::int64_t>(opt_.tile_bits);
  Tile& t = tile_at(x.x >> shift, x.y >> shift);
  const std::size_t idx =
      static_cast<std::size_t>(x.y - t.y0) * static_cast<std::size_t>(tile_size_) +
      static_cast<std::size_t>(x.x - t.x0);
  return t.dir[idx];
}

std::int64_t LazyForestEnv::height_at(const Point& x) {
  const auto shift = static_cast<std::int64_t>(opt_.tile_bits);
  Tile& t = tile_at(x.x >> shift, x.y >> shift);
  const std::size_t idx =
      static_cast<std::size_t>(x.y - t.y0) * static_cast<std::size_t>(tile_size_) +
      static_cast<std::size_t>(x.x - t.x0);
  return t.h[idx];
}

}  // namespace rwlab
