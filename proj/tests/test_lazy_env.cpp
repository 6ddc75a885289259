#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "core/conductance.hpp"
#include "core/fields.hpp"
#include "core/lazy_env.hpp"
#include "core/umbrella.hpp"
#include "core/walker.hpp"

using namespace rwlab;

namespace {

IntensityParams params_for(Model model, std::uint64_t seed) {
  return {model, model == Model::Straight ? 3.0 : 10.0, model == Model::Straight ? 2u : 4u,
          seed};
}

// With a tile-aligned single-tile box and the deep margin equal to the box
// margin, the lazy anchor window coincides exactly with the materialized
// painter's, so the two pipelines must agree bit for bit.
void check_matches_box(Model model, std::uint64_t seed, std::uint64_t side,
                       std::uint64_t margin) {
  const IntensityParams params = params_for(model, seed);
  const ConductanceParams cond{1.25, 0.7};

  const BoxSpec box{{0, 0}, side, side, margin};
  const IntensityField field(params, box);
  const AncestralField anc = ancestral_from_lambda(paint_lambda(field));
  const HeightField hf = heights_from_ancestral(anc);

  LazyForestEnv::Options opt;
  opt.tile_bits = 8;
  opt.deep_margin = static_cast<std::int64_t>(margin);
  opt.keep_window = 1 << 24;  // no eviction during the comparison
  LazyForestEnv lazy(params, cond, BoxSpec{{-64, -64}, side + 128, side + 128, 0}, opt);

  for (std::int64_t ty = 0; ty < static_cast<std::int64_t>(side / 256); ++ty) {
    for (std::int64_t tx = 0; tx < static_cast<std::int64_t>(side / 256); ++tx) {
      lazy.tree_dir({tx * 256, ty * 256});
    }
  }
  std::size_t mismatch = 0;
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(side); ++j) {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(side); ++i) {
      const std::size_t idx = anc.box.index({i, j});
      if (lazy.tree_dir({i, j}) != anc.dir[idx]) ++mismatch;
      if (lazy.height_at({i, j}) != static_cast<std::int64_t>(hf.h[idx])) ++mismatch;
    }
  }
  CHECK(mismatch == 0);
}

// Oracle replicating the documented per-tile anchor window: everything
// within one tile down-left, plus any umbrella strong enough to cross a
// tile (t >= tile side) from within the deep margin. Coverage is evaluated
// from materialized rasters; heights run the shared box DP over the oracle
// directions (row-major tile order has full inflow).
void check_matches_tile_window_oracle(Model model, std::uint64_t seed) {
  const std::uint64_t side = 512;
  const std::int64_t T = 256;
  const std::int64_t deep = 1024;
  const IntensityParams params = params_for(model, seed);
  const IntensityField field(params, BoxSpec{{0, 0}, side, side, 1});

  LambdaField oracle;
  oracle.box = {{0, 0}, side, side, 0};
  oracle.lambda1.assign(side * side, 0.0);
  oracle.lambda2.assign(side * side, 0.0);
  for (std::int64_t ty = 0; ty < 2; ++ty) {
    for (std::int64_t tx = 0; tx < 2; ++tx) {
      const std::int64_t X0 = tx * T, Y0 = ty * T;
      for (std::int64_t ay = Y0 - deep; ay <= Y0 + T - 1; ++ay) {
        for (std::int64_t ax = X0 - deep; ax <= X0 + T - 1; ++ax) {
          const double t = field.value({ax, ay});
          const bool local = ax >= X0 - T && ay >= Y0 - T;
          if (!local && t < static_cast<double>(T)) continue;
          const std::int64_t dist = std::max(X0 - ax, Y0 - ay);
          if (dist > 1 && t < static_cast<double>(dist)) continue;  // cannot reach
          const UmbrellaRaster r = rasterize_umbrella({ax, ay}, t, model);
          const auto paint_cell = [&](const Point& p, std::vector<double>& lam) {
            if (p.x < X0 || p.x > X0 + T - 1 || p.y < Y0 || p.y > Y0 + T - 1) return;
            double& slot = lam[oracle.box.index(p)];
            if (t > slot) slot = t;
          };
          if (model == Model::Straight) {
            for (const Point& p : r.side1_points) paint_cell(p, oracle.lambda1);
            for (const Point& p : r.side2_points) paint_cell(p, oracle.lambda2);
          } else {
            for (const auto* s : {&r.side1_edges, &r.side2_edges}) {
              for (const Edge& e : *s) {
                paint_cell(e.base, e.axis == Axis::Vertical ? oracle.lambda1 : oracle.lambda2);
              }
            }
          }
        }
      }
    }
  }
  const AncestralField oracle_anc = ancestral_from_lambda(oracle);
  const HeightField oracle_h = heights_from_ancestral(oracle_anc);

  LazyForestEnv::Options opt;
  opt.tile_bits = 8;
  opt.deep_margin = deep;
  opt.keep_window = 1 << 24;
  const ConductanceParams cond{1.25, 0.7};
  LazyForestEnv lazy(params, cond, BoxSpec{{-64, -64}, side + 128, side + 128, 0}, opt);
  for (std::int64_t ty = 0; ty < 2; ++ty) {
    for (std::int64_t tx = 0; tx < 2; ++tx) lazy.tree_dir({tx * T, ty * T});
  }
  std::size_t mismatch = 0;
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(side); ++j) {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(side); ++i) {
      const std::size_t idx = oracle.box.index({i, j});
      if (lazy.tree_dir({i, j}) != oracle_anc.dir[idx]) ++mismatch;
      if (lazy.height_at({i, j}) != static_cast<std::int64_t>(oracle_h.h[idx])) ++mismatch;
    }
  }
  CHECK(mismatch == 0);
}

}  // namespace

TEST_CASE("lazy single tile reproduces the materialized environment exactly") {
  for (const Model model : {Model::Straight, Model::Diagonal}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      check_matches_box(model, seed, 256, 1024);
    }
  }
}

TEST_CASE("lazy corridor matches the tile-window oracle across seams") {
  check_matches_tile_window_oracle(Model::Straight, 5);
  check_matches_tile_window_oracle(Model::Diagonal, 6);
}

TEST_CASE("lazy incident log-weights match the conductance builder") {
  const IntensityParams params = params_for(Model::Diagonal, 9);
  const ConductanceParams cond{1.25, 0.7};
  const BoxSpec box{{0, 0}, 256, 256, 512};
  const IntensityField field(params, box);
  const AncestralField anc = ancestral_from_lambda(paint_lambda(field));
  const HeightField hf = heights_from_ancestral(anc);
  const ConductanceField cf = conductances_from_heights(hf, anc, cond);

  LazyForestEnv::Options opt;
  opt.tile_bits = 8;
  opt.deep_margin = 512;
  opt.keep_window = 1 << 24;
  LazyForestEnv lazy(params, cond, BoxSpec{{-64, -64}, 512, 512, 0}, opt);
  lazy.tree_dir({0, 0});

  for (std::int64_t j = 1; j < 255; ++j) {
    for (std::int64_t i = 1; i < 255; ++i) {
      const auto got = lazy.logw4({i, j});
      const auto want = incident_logw(cf, {i, j});
      for (int d = 0; d < 4; ++d) {
        // The box builder zeroes tree edges that leave the box; skip those.
        const bool at_outflow = (d == 0 && i == 254) || (d == 1 && j == 254);
        if (!at_outflow) CHECK(got[d] == want[d]);
      }
    }
  }
}

TEST_CASE("lazy walks are reproducible and evict safely") {
  const IntensityParams params = params_for(Model::Diagonal, 4);
  const ConductanceParams cond{1.25, 0.7};
  const BoxSpec big{{0, 0}, 1u << 22, 1u << 22, 0};

  WalkConfig cfg;
  cfg.start = {4096, 4096};
  cfg.steps = 30000;
  cfg.seed = 12;

  Trajectory first, second;
  for (Trajectory* out : {&first, &second}) {
    LazyForestEnv::Options opt;
    opt.deep_margin = 512;
    opt.keep_window = 2048;  // aggressive eviction
    LazyForestEnv env(params, cond, big, opt);
    *out = run_walk(env, cfg);
  }
  REQUIRE(first.checkpoints.size() == second.checkpoints.size());
  for (std::size_t i = 0; i < first.checkpoints.size(); ++i) {
    CHECK(first.checkpoints[i].position == second.checkpoints[i].position);
  }
  CHECK(first.final_position == second.final_position);
  CHECK(first.follow_fraction_tail == second.follow_fraction_tail);
  // A tree walk locks onto the ancestral function quickly.
  CHECK(first.follow_fraction_tail > 0.9);
}
