#include "core/vc.hpp"

#include <cmath>
#include <deque>

#include "core/errors.hpp"

namespace rwlab {

VcReport vc_check(const ConductanceField& field, int n_max, double bound_scale) {
  const std::uint64_t w = field.box.width;
  const std::uint64_t h = field.box.height;
  const std::size_t N = static_cast<std::size_t>(w * h);
  if (N > 400) config_error("vc_check: graph limited to 400 states");
  if (n_max < 1) config_error("vc_check: n_max must be >= 1");
  for (const double lw : field.logw_h) {
    if (lw > 200.0) config_error("vc_check: log-conductances must stay <= 200");
  }
  for (const double lw : field.logw_v) {
    if (lw > 200.0) config_error("vc_check: log-conductances must stay <= 200");
  }

  const auto id = [&](std::uint64_t i, std::uint64_t j) {
    return static_cast<std::size_t>(j * w + i);
  };

  // Conductance matrix and reversible measure; reflecting boundary means
  // normalizing over the edges that exist in the finite grid.
  std::vector<double> cond(N * N, 0.0);
  std::vector<double> pi(N, 0.0);
  for (std::uint64_t j = 0; j < h; ++j) {
    for (std::uint64_t i = 0; i < w; ++i) {
      if (i + 1 < w) {
        const double c = std::exp(field.logw_h[field.h_index(static_cast<std::int64_t>(i),
                                                             static_cast<std::int64_t>(j))]);
        cond[id(i, j) * N + id(i + 1, j)] = c;
        cond[id(i + 1, j) * N + id(i, j)] = c;
      }
      if (j + 1 < h) {
        const double c = std::exp(field.logw_v[field.v_index(static_cast<std::int64_t>(i),
                                                             static_cast<std::int64_t>(j))]);
        cond[id(i, j) * N + id(i, j + 1)] = c;
        cond[id(i, j + 1) * N + id(i, j)] = c;
      }
    }
  }
  for (std::size_t x = 0; x < N; ++x) {
    for (std::size_t y = 0; y < N; ++y) pi[x] += cond[x * N + y];
    if (pi[x] <= 0.0) config_error("vc_check: isolated state, kernel not irreducible");
  }

  std::vector<double> P(N * N, 0.0);
  for (std::size_t x = 0; x < N; ++x) {
    for (std::size_t y = 0; y < N; ++y) P[x * N + y] = cond[x * N + y] / pi[x];
  }

  // Graph distances by BFS from every state.
  std::vector<int> dist(N * N, -1);
  for (std::size_t s = 0; s < N; ++s) {
    std::deque<std::size_t> queue{s};
    dist[s * N + s] = 0;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y = 0; y < N; ++y) {
        if (cond[x * N + y] > 0.0 && dist[s * N + y] < 0) {
          dist[s * N + y] = dist[s * N + x] + 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t y = 0; y < N; ++y) {
      if (dist[s * N + y] < 0) config_error("vc_check: kernel not irreducible");
    }
  }

  VcReport report;
  report.states = N;
  report.n_max = n_max;

  std::vector<double> Ln(P);
  std::vector<double> next(N * N, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      for (std::size_t x = 0; x < N; ++x) {
        for (std::size_t k = 0; k < N; ++k) {
          const double lxk = Ln[x * N + k];
          if (lxk == 0.0) continue;
          for (std::size_t y = 0; y < N; ++y) next[x * N + y] += lxk * P[k * N + y];
        }
      }
      Ln.swap(next);
      std::fill(next.begin(), next.end(), 0.0);
    }
    for (std::size_t x = 0; x < N; ++x) {
      double row = 0.0;
      for (std::size_t y = 0; y < N; ++y) row += Ln[x * N + y];
      if (std::abs(row - 1.0) > 1e-9) numeric_error("vc_check: matrix power row sum drift");
      for (std::size_t y = 0; y < N; ++y) {
        const double prob = Ln[x * N + y];
        if (prob == 0.0) continue;  // bound vacuous
        const double d = static_cast<double>(dist[x * N + y]);
        const double bound = bound_scale * 2.0 * std::sqrt(pi[y] / pi[x]) *
                             std::exp(-d * d / (2.0 * static_cast<double>(n)));
        ++report.pairs_checked;
        const double ratio = prob / bound;
        if (ratio > report.max_ratio) report.max_ratio = ratio;
        if (prob > bound) {
          report.violations.push_back({n, x, y, prob, bound});
        }
      }
    }
  }
  return report;
}

}  // namespace rwlab
