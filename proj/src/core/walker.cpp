#include "core/walker.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/hash_rng.hpp"
#include "core/logsumexp.hpp"

namespace rwlab {

std::array<double, 4> transition_probs(const std::array<double, 4>& logw) {
  const double lse = logsumexp4(logw);
  return {std::exp(logw[0] - lse), std::exp(logw[1] - lse), std::exp(logw[2] - lse),
          std::exp(logw[3] - lse)};
}

std::array<double, 4> transition_log_probs(const std::array<double, 4>& logw) {
  const double lse = logsumexp4(logw);
  return {logw[0] - lse, logw[1] - lse, logw[2] - lse, logw[3] - lse};
}

std::array<double, 4> incident_logw(const ConductanceField& f, const Point& x) {
  return {f.logw(x, Axis::Horizontal), f.logw(x, Axis::Vertical),
          f.logw({x.x - 1, x.y}, Axis::Horizontal), f.logw({x.x, x.y - 1}, Axis::Vertical)};
}

std::array<double, 4> transition_probs(const ConductanceField& f, const Point& x) {
  return transition_probs(incident_logw(f, x));
}

double stationary_log_weight(const ConductanceField& f, const Point& x) {
  return logsumexp4(incident_logw(f, x));
}

void WalkConfig::validate() const {
  if (steps < 1) config_error("walk requires steps >= 1");
  if (!(gamma > 1.0)) config_error("checkpoint ratio gamma must exceed 1");
}

namespace {

std::vector<std::uint64_t> checkpoint_schedule(const WalkConfig& cfg) {
  std::vector<std::uint64_t> cps;
  double g = cfg.gamma;
  for (;;) {
    const std::uint64_t n = static_cast<std::uint64_t>(std::floor(g));
    if (n >= cfg.steps) break;
    if (n >= 1) cps.push_back(n);
    g *= cfg.gamma;
    if (g > 1e18) break;
  }
  for (const std::uint64_t n : cfg.extra_checkpoints) {
    if (n >= 1 && n < cfg.steps) cps.push_back(n);
  }
  cps.push_back(cfg.steps);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

}  // namespace

Trajectory run_walk(EnvView& env, const WalkConfig& cfg) {
  cfg.validate();
  if (!env.interior(cfg.start)) {
    config_error("walk start must lie strictly inside the box");
  }

  Trajectory traj;
  traj.config = cfg;
  traj.has_tree = env.tree_dir(cfg.start) != 0;

  const std::vector<std::uint64_t> schedule = checkpoint_schedule(cfg);
  std::size_t next_cp = 0;

  SplitMix64 rng(derive_stream(cfg.seed, StreamTag::Walk));
  Point x = cfg.start;

  // One bit per step so the trailing-window fraction is exact even on early exit.
  std::vector<std::uint8_t> follow_bits;
  if (traj.has_tree) follow_bits.reserve(cfg.steps);

  std::uint64_t follows_cum = 0;
  std::uint64_t window_start_n = 0;
  std::uint64_t window_start_follows = 0;

  std::uint64_t n = 0;
  while (n < cfg.steps) {
    const std::array<double, 4> probs = transition_probs(env.logw4(x));
    const double u = rng.next_unit();
    int pick = 3;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      acc += probs[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    if (traj.has_tree) {
      const int adir = env.tree_dir(x);
      const bool followed = (pick == 0 && adir == 1) || (pick == 1 && adir == 2);
      follow_bits.push_back(followed ? 1 : 0);
      if (followed) ++follows_cum;
    }
    x = x + kSteps[static_cast<std::size_t>(pick)];
    ++n;

    const bool at_boundary = !env.interior(x);
    const bool exiting = at_boundary && cfg.stop_on_exit;
    if (next_cp < schedule.size() && (n == schedule[next_cp] || exiting || n == cfg.steps)) {
      while (next_cp < schedule.size() && schedule[next_cp] < n) ++next_cp;
      const double denom = static_cast<double>(n - window_start_n);
      const double frac =
          traj.has_tree && denom > 0
              ? static_cast<double>(follows_cum - window_start_follows) / denom
              : 0.0;
      traj.checkpoints.push_back({n, x, frac});
      window_start_n = n;
      window_start_follows = follows_cum;
      if (next_cp < schedule.size() && schedule[next_cp] == n) ++next_cp;
    }
    if (exiting) {
      traj.exited = true;
      break;
    }
  }

  traj.final_position = x;
  traj.steps_taken = n;
  if (traj.has_tree && n > 0) {
    const std::uint64_t tail_len = std::max<std::uint64_t>(1, n / 10);
    std::uint64_t tail_follows = 0;
    for (std::uint64_t k = n - tail_len; k < n; ++k) tail_follows += follow_bits[k];
    traj.follow_fraction_tail = static_cast<double>(tail_follows) / static_cast<double>(tail_len);
  }
  return traj;
}

double follow_tree_lower_bound(double A, int K) {
  if (!(A > 1.0)) config_error("follow_tree_lower_bound requires A > 1 (bound degenerates)");
  if (K < 2) config_error("follow_tree_lower_bound requires K >= 2");
  double log_prod = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double kA = std::pow(static_cast<double>(k), A);
    const double km1A = std::pow(static_cast<double>(k) - 1.0, A);
    log_prod -= std::log1p(2.0 * std::exp(km1A - kA) + std::exp(-kA));
  }
  // Tail: sum_{k>K} 2 e^{-A (k-1)^{A-1}} + e^{-k^A}, summed until negligible.
  double tail = 0.0;
  for (long long k = K + 1;; ++k) {
    const double term = 2.0 * std::exp(-A * std::pow(static_cast<double>(k) - 1.0, A - 1.0)) +
                        std::exp(-std::pow(static_cast<double>(k), A));
    tail += term;
    if (term < 1e-18) break;
    if (k > 100000000LL) numeric_error("follow_tree_lower_bound: tail did not converge");
  }
  return std::exp(log_prod - tail);
}

}  // namespace rwlab
