#include "core/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/lazy_env.hpp"
#include "core/parallel.hpp"
#include "core/snapshot.hpp"
#include "core/vc.hpp"
#include "core/walker.hpp"

namespace rwlab {

namespace {

using nlohmann::json;

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void ensure_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) io_error("cannot create output directory " + dir + ": " + ec.message());
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) io_error("write failure: " + path);
}

constexpr std::uint64_t kMaxMaterializedCells = 1ull << 26;

void check_materializable(const ExperimentConfig& cfg) {
  if (cfg.width * cfg.height > kMaxMaterializedCells) {
    config_error("box of " + std::to_string(cfg.width) + "x" + std::to_string(cfg.height) +
                 " cells is too large to materialize; use walk_env = lazy");
  }
}

void check_tiebreak_soundness(const BuiltEnv& env) {
  const double frac = static_cast<double>(env.tiebreaks) /
                      static_cast<double>(env.heights.box.cells());
  if (frac > 1e-4) {
    numeric_error("tie-break fraction " + std::to_string(frac) +
                  " exceeds 0.01% of sites; intensity law is not behaving atomlessly");
  }
}

std::string env_file(const ExperimentConfig& cfg, std::uint64_t seed, const char* prefix,
                     const char* ext) {
  return std::string(prefix) + "_seed" + std::to_string(seed) + "_" + config_fingerprint(cfg) +
         ext;
}

void write_tail_csv(const std::string& path, const TailTable& table,
                    const std::string& component) {
  CsvWriter csv(path);
  csv.raw("component,threshold,count,total,survival,");
  csv.raw(tail_scaling_name(table.scaling));
  csv.raw(",wilson_lo,wilson_hi,excluded\n");
  for (const TailRow& r : table.rows) {
    csv.field(component);
    csv.field(r.threshold);
    csv.field(r.count);
    csv.field(r.total);
    csv.field(r.survival);
    csv.field(r.scaled);
    csv.field(r.wilson_lo);
    csv.field(r.wilson_hi);
    csv.field(static_cast<std::uint64_t>(r.excluded ? 1 : 0));
    csv.endrow();
  }
}

TailTable pool_tables(const std::vector<TailTable>& tables) {
  TailTable pooled;
  if (tables.empty()) return pooled;
  pooled.scaling = tables.front().scaling;
  pooled.rows = tables.front().rows;
  for (std::size_t t = 1; t < tables.size(); ++t) {
    for (std::size_t r = 0; r < pooled.rows.size(); ++r) {
      pooled.rows[r].count += tables[t].rows[r].count;
      pooled.rows[r].total += tables[t].rows[r].total;
    }
  }
  for (TailRow& r : pooled.rows) {
    r.excluded = r.total == 0;
    r.survival = r.total > 0 ? static_cast<double>(r.count) / static_cast<double>(r.total) : 0.0;
    const double l = std::log(r.threshold);
    switch (pooled.scaling) {
      case TailScaling::NLinear: r.scaled = r.threshold * r.survival; break;
      case TailScaling::NLog2: r.scaled = l > 0 ? r.threshold / (l * l) * r.survival : 0.0; break;
      case TailScaling::TLogT: r.scaled = l > 0 ? r.threshold / l * r.survival : 0.0; break;
    }
    wilson_interval(r.count, r.total, r.wilson_lo, r.wilson_hi);
  }
  return pooled;
}

json tail_to_json(const TailTable& t) {
  json rows = json::array();
  for (const TailRow& r : t.rows) {
    rows.push_back({{"threshold", r.threshold},
                    {"count", r.count},
                    {"total", r.total},
                    {"survival", r.survival},
                    {"scaled", r.scaled},
                    {"wilson_lo", r.wilson_lo},
                    {"wilson_hi", r.wilson_hi},
                    {"excluded", r.excluded}});
  }
  return {{"scaling", tail_scaling_name(t.scaling)}, {"rows", rows}};
}

}  // namespace

BuiltEnv build_tree_env(const IntensityParams& params, const BoxSpec& box, int threads,
                        bool keep_lambda) {
  BuiltEnv env;
  env.params = params;
  const IntensityField field(params, box);
  LambdaField lam = paint_lambda(field, threads);
  env.ancestral = ancestral_from_lambda(lam);
  env.tiebreaks = env.ancestral.tiebreak_count;
  env.heights = heights_from_ancestral(env.ancestral);
  if (keep_lambda) env.lambda = std::move(lam);
  return env;
}

ConductanceField random_vc_kernel(std::uint64_t seed, std::uint64_t size, double logw_max) {
  BoxSpec box{{0, 0}, size, size, 0};
  ConductanceField f;
  f.box = box;
  f.logw_h.resize((size - 1) * size);
  f.logw_v.resize(size * (size - 1));
  const SiteHash hash(derive_stream(seed, StreamTag::IidEdge));
  for (std::uint64_t j = 0; j < size; ++j) {
    for (std::uint64_t i = 0; i + 1 < size; ++i) {
      const Edge e{{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)},
                   Axis::Horizontal};
      f.logw_h[f.h_index(i, j)] = logw_max * unit_open(hash.bits_edge(e));
    }
  }
  for (std::uint64_t j = 0; j + 1 < size; ++j) {
    for (std::uint64_t i = 0; i < size; ++i) {
      const Edge e{{static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}, Axis::Vertical};
      f.logw_v[f.v_index(i, j)] = logw_max * unit_open(hash.bits_edge(e));
    }
  }
  return f;
}

CommandResult run_generate(const ExperimentConfig& cfg, const std::string& out_dir, int threads) {
  check_materializable(cfg);
  ensure_dir(out_dir);
  CommandResult res;
  char buf[256];
  for (const std::uint64_t seed : cfg.seeds) {
    if (cfg.model == EnvKind::Iid) {
      const ConductanceField field = iid_log_pareto(cfg.box(), cfg.iid(seed));
      const std::string cond_path = join_path(out_dir, env_file(cfg, seed, "cond", ".cond"));
      write_cond_snapshot(cond_path, kSnapshotKindIid, cfg.beta, 0, seed, field);
      res.files.push_back(cond_path);
      std::snprintf(buf, sizeof(buf), "seed %llu: iid beta=%g edges=%zu",
                    static_cast<unsigned long long>(seed), cfg.beta,
                    field.logw_h.size() + field.logw_v.size());
      res.lines.push_back(buf);
      continue;
    }
    const BuiltEnv env = build_tree_env(cfg.intensity(seed), cfg.box(), threads, false);
    check_tiebreak_soundness(env);
    const ConductanceField cond =
        conductances_from_heights(env.heights, env.ancestral, cfg.conductance());
    const std::string env_path = join_path(out_dir, env_file(cfg, seed, "env", ".umbr"));
    const std::string cond_path = join_path(out_dir, env_file(cfg, seed, "cond", ".cond"));
    write_env_snapshot(env_path, env.params, env.heights, env.ancestral);
    write_cond_snapshot(cond_path, static_cast<std::uint8_t>(env.params.model), cfg.theta,
                        cfg.n0, seed, cond);
    res.files.push_back(env_path);
    res.files.push_back(cond_path);

    std::uint32_t max_h = 0;
    std::uint64_t exact = 0;
    for (std::size_t i = 0; i < env.heights.h.size(); ++i) {
      max_h = std::max(max_h, env.heights.h[i]);
      exact += env.heights.exact[i];
    }
    std::snprintf(buf, sizeof(buf), "seed %llu: max_h=%u exact_fraction=%.6f tiebreaks=%llu",
                  static_cast<unsigned long long>(seed), max_h,
                  static_cast<double>(exact) / static_cast<double>(env.heights.h.size()),
                  static_cast<unsigned long long>(env.tiebreaks));
    res.lines.push_back(buf);
  }
  return res;
}

SpeedReport run_one_walk(const ExperimentConfig& cfg, std::uint64_t seed, Trajectory* traj_out) {
  WalkConfig wc;
  wc.start = cfg.walk_start();
  wc.steps = cfg.steps;
  wc.seed = seed;
  wc.gamma = cfg.gamma;
  wc.extra_checkpoints = cfg.checkpoints;
  wc.stop_on_exit = cfg.stop_on_exit;

  Trajectory traj;
  if (cfg.model == EnvKind::Iid) {
    IidLazyView view(cfg.box(), cfg.iid(seed));
    traj = run_walk(view, wc);
  } else if (cfg.resolved_backend() == WalkBackend::Lazy) {
    LazyForestEnv::Options opt;
    opt.deep_margin = static_cast<std::int64_t>(cfg.walk_margin);
    opt.keep_window = std::max<std::int64_t>(8192, 2 * opt.deep_margin);
    LazyForestEnv env(cfg.intensity(seed), cfg.conductance(), cfg.box(), opt);
    traj = run_walk(env, wc);
  } else {
    const std::string env_path =
        join_path(cfg.out_dir, env_file(cfg, seed, "env", ".umbr"));
    const std::string cond_path =
        join_path(cfg.out_dir, env_file(cfg, seed, "cond", ".cond"));
    if (!std::filesystem::exists(env_path) || !std::filesystem::exists(cond_path)) {
      io_error("snapshot missing for seed " + std::to_string(seed) + "; run generate first (" +
               env_path + ")");
    }
    const EnvSnapshot env = read_env_snapshot(env_path);
    const CondSnapshot cond = read_cond_snapshot(cond_path);
    BoxCondView view(&cond.field, &env.ancestral);
    traj = run_walk(view, wc);
  }
  const SpeedReport rep = speed_report(traj, cfg.burn_in);
  if (traj_out != nullptr) *traj_out = std::move(traj);
  return rep;
}

CommandResult run_walk(const ExperimentConfig& cfg_in, const std::string& out_dir, int threads) {
  ensure_dir(out_dir);
  CommandResult res;
  // Box-backend walks read the snapshots generate wrote into the same directory.
  ExperimentConfig cfg = cfg_in;
  cfg.out_dir = out_dir;
  const std::string fp = config_fingerprint(cfg);

  std::vector<Trajectory> trajectories(cfg.seeds.size());
  std::vector<SpeedReport> reports(cfg.seeds.size());
  parallel_for_blocks(cfg.seeds.size(), 1, threads,
                      [&](std::size_t b, std::size_t, std::size_t) {
                        reports[b] = run_one_walk(cfg, cfg.seeds[b], &trajectories[b]);
                      });

  json per_seed = json::array();
  std::vector<double> final_sdiag, final_santi, vinf;
  char buf[256];
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    const std::uint64_t seed = cfg.seeds[i];
    const Trajectory& traj = trajectories[i];
    const SpeedReport& rep = reports[i];

    const std::string traj_path =
        join_path(out_dir, "traj_seed" + std::to_string(seed) + "_" + fp + ".csv");
    CsvWriter csv(traj_path);
    csv.raw("n,x1,x2,v1,v2,s_diag,s_anti,follow_frac_window\n");
    for (std::size_t k = 0; k < traj.checkpoints.size(); ++k) {
      const Checkpoint& cp = traj.checkpoints[k];
      const SpeedPoint& sp = rep.points[k];
      csv.field(cp.n);
      csv.field(cp.position.x - traj.config.start.x);
      csv.field(cp.position.y - traj.config.start.y);
      csv.field(sp.v1);
      csv.field(sp.v2);
      csv.field(sp.s_diag);
      csv.field(sp.s_anti);
      csv.field(sp.follow_frac_window);
      csv.endrow();
    }
    res.files.push_back(traj_path);

    const bool early_exit = traj.exited && traj.steps_taken < 100;
    if (early_exit) {
      res.warnings.push_back("seed " + std::to_string(seed) + ": walk exited the box after " +
                             std::to_string(traj.steps_taken) + " steps");
    }
    per_seed.push_back({{"seed", seed},
                        {"steps", rep.steps},
                        {"exited", rep.exited},
                        {"early_exit_warning", early_exit},
                        {"final_v", {rep.final_v1, rep.final_v2}},
                        {"final_v_inf", std::max(std::abs(rep.final_v1), std::abs(rep.final_v2))},
                        {"final_s_diag", rep.final_s_diag},
                        {"final_s_anti", rep.final_s_anti},
                        {"s_anti_range", rep.s_anti_range},
                        {"s_anti_min", rep.s_anti_min},
                        {"s_anti_max", rep.s_anti_max},
                        {"follow_fraction_tail", rep.follow_fraction_tail}});
    final_sdiag.push_back(rep.final_s_diag);
    final_santi.push_back(rep.final_s_anti);
    vinf.push_back(std::max(std::abs(rep.final_v1), std::abs(rep.final_v2)));

    std::snprintf(buf, sizeof(buf),
                  "seed %llu: steps=%llu s_diag=%.4f s_anti=%.4f range=%.4f follow_tail=%.4f%s",
                  static_cast<unsigned long long>(seed),
                  static_cast<unsigned long long>(rep.steps), rep.final_s_diag,
                  rep.final_s_anti, rep.s_anti_range, rep.follow_fraction_tail,
                  rep.exited ? " (exited)" : "");
    res.lines.push_back(buf);
  }

  json summary = {{"fingerprint", fp},
                  {"model", env_kind_name(cfg.model)},
                  {"burn_in", cfg.burn_in},
                  {"seeds", cfg.seeds},
                  {"per_seed", per_seed},
                  {"median_final_s_diag", median(final_sdiag)},
                  {"median_final_s_anti", median(final_santi)},
                  {"median_final_v_inf", median(vinf)},
                  {"warnings", res.warnings}};
  const std::string json_path = join_path(out_dir, "speed_" + fp + ".json");
  write_json(json_path, summary);
  res.files.push_back(json_path);
  return res;
}

CommandResult run_tails(const ExperimentConfig& cfg, const std::string& out_dir, int threads) {
  if (cfg.model == EnvKind::Iid) config_error("tail tables require a tree model");
  check_materializable(cfg);
  ensure_dir(out_dir);
  CommandResult res;
  const std::string fp = config_fingerprint(cfg);
  const TailScaling h_scaling =
      cfg.model == EnvKind::Straight ? TailScaling::NLinear : TailScaling::NLog2;
  const TailScaling l_scaling =
      cfg.model == EnvKind::Straight ? TailScaling::NLinear : TailScaling::TLogT;

  const double max_thr = *std::max_element(cfg.thresholds.begin(), cfg.thresholds.end());
  if (max_thr + 1 >= static_cast<double>(std::min(cfg.width, cfg.height))) {
    res.warnings.push_back("thresholds beyond certification depth are excluded; table partial");
  }

  std::vector<TailTable> h_tables, l1_tables, l2_tables;
  char buf[256];
  for (const std::uint64_t seed : cfg.seeds) {
    const BuiltEnv env = build_tree_env(cfg.intensity(seed), cfg.box(), threads, true);
    check_tiebreak_soundness(env);
    TailTable ht = height_tail_table(env.heights, cfg.thresholds, h_scaling);
    TailTable l1 = value_tail_table(env.lambda.lambda1, cfg.t_thresholds, l_scaling);
    TailTable l2 = value_tail_table(env.lambda.lambda2, cfg.t_thresholds, l_scaling);

    const std::string h_path =
        join_path(out_dir, "htail_seed" + std::to_string(seed) + "_" + fp + ".csv");
    write_tail_csv(h_path, ht, "h");
    res.files.push_back(h_path);
    const std::string l_path =
        join_path(out_dir, "ltail_seed" + std::to_string(seed) + "_" + fp + ".csv");
    {
      CsvWriter csv(l_path);
      csv.raw("component,threshold,count,total,survival,");
      csv.raw(tail_scaling_name(l_scaling));
      csv.raw(",wilson_lo,wilson_hi,excluded\n");
      for (const TailTable* t : {&l1, &l2}) {
        const char* comp = t == &l1 ? "lambda1" : "lambda2";
        for (const TailRow& r : t->rows) {
          csv.field(std::string(comp));
          csv.field(r.threshold);
          csv.field(r.count);
          csv.field(r.total);
          csv.field(r.survival);
          csv.field(r.scaled);
          csv.field(r.wilson_lo);
          csv.field(r.wilson_hi);
          csv.field(static_cast<std::uint64_t>(r.excluded ? 1 : 0));
          csv.endrow();
        }
      }
    }
    res.files.push_back(l_path);

    h_tables.push_back(std::move(ht));
    l1_tables.push_back(std::move(l1));
    l2_tables.push_back(std::move(l2));
    std::snprintf(buf, sizeof(buf), "seed %llu: tail tables emitted",
                  static_cast<unsigned long long>(seed));
    res.lines.push_back(buf);
  }

  const TailTable pooled_h = pool_tables(h_tables);
  const TailTable pooled_l1 = pool_tables(l1_tables);
  const TailTable pooled_l2 = pool_tables(l2_tables);
  const std::string pooled_path = join_path(out_dir, "htail_pooled_" + fp + ".csv");
  write_tail_csv(pooled_path, pooled_h, "h");
  res.files.push_back(pooled_path);

  json summary = {{"fingerprint", fp},
                  {"model", env_kind_name(cfg.model)},
                  {"seeds", cfg.seeds},
                  {"h_tail_pooled", tail_to_json(pooled_h)},
                  {"lambda1_tail_pooled", tail_to_json(pooled_l1)},
                  {"lambda2_tail_pooled", tail_to_json(pooled_l2)},
                  {"warnings", res.warnings}};
  const std::string json_path = join_path(out_dir, "tails_" + fp + ".json");
  write_json(json_path, summary);
  res.files.push_back(json_path);
  return res;
}

CommandResult run_vc(const ExperimentConfig& cfg, const std::string& out_dir, int threads) {
  ensure_dir(out_dir);
  (void)threads;
  CommandResult res;
  const std::string fp = config_fingerprint(cfg);

  std::uint64_t total_violations = 0;
  double max_ratio = 0.0;
  std::uint64_t pairs = 0;
  json kernels = json::array();
  for (std::uint64_t k = 0; k < cfg.vc_kernels; ++k) {
    const std::uint64_t kernel_seed = mix64(cfg.seeds.front() + k);
    const ConductanceField field = random_vc_kernel(kernel_seed, cfg.vc_size, cfg.vc_logw_max);
    const VcReport rep =
        vc_check(field, static_cast<int>(cfg.vc_nmax), cfg.vc_bound_scale);
    total_violations += rep.violations.size();
    max_ratio = std::max(max_ratio, rep.max_ratio);
    pairs += rep.pairs_checked;
    kernels.push_back({{"kernel", k},
                       {"max_ratio", rep.max_ratio},
                       {"violations", rep.violations.size()}});
  }

  json summary = {{"fingerprint", fp},
                  {"kernels", cfg.vc_kernels},
                  {"states", cfg.vc_size * cfg.vc_size},
                  {"n_max", cfg.vc_nmax},
                  {"bound_scale", cfg.vc_bound_scale},
                  {"pairs_checked", pairs},
                  {"max_ratio", max_ratio},
                  {"total_violations", total_violations},
                  {"per_kernel", kernels}};
  const std::string json_path = join_path(out_dir, "vc_" + fp + ".json");
  write_json(json_path, summary);
  res.files.push_back(json_path);

  char buf[160];
  std::snprintf(buf, sizeof(buf), "%llu kernels, %llu pairs, max_ratio=%.6f, violations=%llu",
                static_cast<unsigned long long>(cfg.vc_kernels),
                static_cast<unsigned long long>(pairs), max_ratio,
                static_cast<unsigned long long>(total_violations));
  res.lines.push_back(buf);
  if (total_violations > 0 && cfg.vc_bound_scale >= 1.0) {
    numeric_error("transition-kernel bound violated on an honest kernel; see " + json_path);
  }
  return res;
}

CommandResult run_report(const ExperimentConfig& cfg, const std::string& out_dir, int threads) {
  if (cfg.model == EnvKind::Iid) config_error("the moment report requires a tree model");
  ensure_dir(out_dir);
  CommandResult res;
  const std::string fp = config_fingerprint(cfg);

  struct MomentRow {
    std::uint64_t size;
    double edge_uniform_finite;
    double tree_edge_finite;
    double edge_uniform_divergent;
    double series_divergent;
    std::uint64_t series_k;
  };
  std::vector<MomentRow> rows;

  for (std::uint32_t d = 0; d <= cfg.doublings; ++d) {
    const std::uint32_t shift = cfg.doublings - d;
    ExperimentConfig sub = cfg;
    sub.width = cfg.width >> shift;
    sub.height = cfg.height >> shift;
    if (sub.width < 8 || sub.height < 8) {
      config_error("width too small for the requested number of doublings");
    }
    check_materializable(sub);
    const BuiltEnv env = build_tree_env(sub.intensity(cfg.seeds.front()), sub.box(), threads,
                                        false);
    const double A = cfg.A;
    const std::uint64_t w = sub.width, h = sub.height;
    const std::uint64_t n_sites = w * h;
    const std::uint64_t n_edges = (w - 1) * h + w * (h - 1);

    // Tree edges fully inside the box contribute (h+1)^A, everything else 0.
    double sum_fin_edges = 0.0, sum_div_edges = 0.0, sum_fin_tree = 0.0;
    for (std::uint64_t j = 0; j < h; ++j) {
      for (std::uint64_t i = 0; i < w; ++i) {
        const std::size_t idx = j * w + i;
        const double logw = std::pow(static_cast<double>(env.heights.h[idx]) + 1.0, A);
        sum_fin_tree += std::pow(logw, cfg.alpha_finite);
        const bool inside = env.ancestral.dir[idx] == 1 ? i + 1 < w : j + 1 < h;
        if (inside) {
          sum_fin_edges += std::pow(logw, cfg.alpha_finite);
          sum_div_edges += std::pow(logw, cfg.alpha_divergent);
        }
      }
    }

    const std::uint32_t kmax = static_cast<std::uint32_t>(std::min(w, h) / 2);
    const std::vector<double> survival = height_tail_survival(env.heights, kmax);
    const LogMomentSeries series =
        log_moment_from_height_tail(survival, A, cfg.alpha_divergent);

    rows.push_back({n_sites, sum_fin_edges / static_cast<double>(n_edges),
                    sum_fin_tree / static_cast<double>(n_sites),
                    sum_div_edges / static_cast<double>(n_edges), series.value,
                    series.truncation_index});
  }

  const std::string csv_path = join_path(out_dir, "moments_" + fp + ".csv");
  {
    CsvWriter csv(csv_path);
    csv.raw("sites,edge_uniform_alpha_finite,tree_edge_alpha_finite,"
            "edge_uniform_alpha_divergent,series_alpha_divergent,series_k\n");
    for (const MomentRow& r : rows) {
      csv.field(r.size);
      csv.field(r.edge_uniform_finite);
      csv.field(r.tree_edge_finite);
      csv.field(r.edge_uniform_divergent);
      csv.field(r.series_divergent);
      csv.field(r.series_k);
      csv.endrow();
    }
  }
  res.files.push_back(csv_path);

  json growth_fin = json::array(), growth_series = json::array();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    growth_fin.push_back(rows[i].edge_uniform_finite / rows[i - 1].edge_uniform_finite - 1.0);
    growth_series.push_back(rows[i].series_divergent / rows[i - 1].series_divergent - 1.0);
  }
  const double follow_bound = follow_tree_lower_bound(cfg.A, 50);
  json summary = {{"fingerprint", fp},
                  {"model", env_kind_name(cfg.model)},
                  {"A", cfg.A},
                  {"alpha_finite", cfg.alpha_finite},
                  {"alpha_divergent", cfg.alpha_divergent},
                  {"finite_moment_growth_per_doubling", growth_fin},
                  {"divergent_series_growth_per_doubling", growth_series},
                  {"follow_tree_lower_bound_K50", follow_bound},
                  {"follow_tree_lower_bound_positive", follow_bound > 0.0}};
  const std::string json_path = join_path(out_dir, "report_" + fp + ".json");
  write_json(json_path, summary);
  res.files.push_back(json_path);

  char buf[200];
  std::snprintf(buf, sizeof(buf), "%zu box sizes, follow bound %.3e, series growth last %.1f%%",
                rows.size(), follow_bound,
                rows.size() > 1
                    ? 100.0 * (rows.back().series_divergent / rows[rows.size() - 2].series_divergent -
                               1.0)
                    : 0.0);
  res.lines.push_back(buf);
  return res;
}

CommandResult run_command(const ExperimentConfig& cfg, const std::string& command,
                          const std::string& out_dir, int threads) {
  const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
  if (command == "generate") return run_generate(cfg, dir, threads);
  if (command == "walk") return run_walk(cfg, dir, threads);
  if (command == "tails") return run_tails(cfg, dir, threads);
  if (command == "vc") return run_vc(cfg, dir, threads);
  if (command == "report") return run_report(cfg, dir, threads);
  config_error("unknown command '" + command + "' (expected generate|walk|tails|vc|report)");
  return {};
}

}  // namespace rwlab
