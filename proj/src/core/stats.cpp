#include "core/stats.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace rwlab {

const char* tail_scaling_name(TailScaling s) {
  switch (s) {
    case TailScaling::NLinear: return "n_survival";
    case TailScaling::NLog2: return "n_over_log2n_survival";
    case TailScaling::TLogT: return "t_over_logt_survival";
  }
  return "?";
}

void wilson_interval(std::uint64_t count, std::uint64_t total, double& lo, double& hi) {
  if (total == 0) {
    lo = 0.0;
    hi = 1.0;
    return;
  }
  const double n = static_cast<double>(total);
  if (count == 0) {
    lo = 0.0;
    hi = std::min(1.0, 3.0 / n);
    return;
  }
  constexpr double z = 1.959963984540054;
  const double p = static_cast<double>(count) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

namespace {

double scaled_column(TailScaling scaling, double threshold, double survival) {
  switch (scaling) {
    case TailScaling::NLinear:
      return threshold * survival;
    case TailScaling::NLog2: {
      const double l = std::log(threshold);
      return l > 0.0 ? threshold / (l * l) * survival : 0.0;
    }
    case TailScaling::TLogT: {
      const double l = std::log(threshold);
      return l > 0.0 ? threshold / l * survival : 0.0;
    }
  }
  return 0.0;
}

TailRow make_row(TailScaling scaling, double threshold, std::uint64_t count,
                 std::uint64_t total) {
  TailRow row;
  row.threshold = threshold;
  row.count = count;
  row.total = total;
  row.excluded = total == 0;
  row.survival = total > 0 ? static_cast<double>(count) / static_cast<double>(total) : 0.0;
  row.scaled = scaled_column(scaling, threshold, row.survival);
  wilson_interval(count, total, row.wilson_lo, row.wilson_hi);
  return row;
}

}  // namespace

TailTable tail_table(std::span<const TailSample> samples, std::span<const double> thresholds,
                     TailScaling scaling) {
  TailTable out;
  out.scaling = scaling;
  for (const double thr : thresholds) {
    std::uint64_t count = 0, total = 0;
    for (const TailSample& s : samples) {
      if (static_cast<double>(s.cert_depth) <= thr) continue;
      ++total;
      if (s.value > thr) ++count;
    }
    out.rows.push_back(make_row(scaling, thr, count, total));
  }
  return out;
}

TailTable value_tail_table(std::span<const double> values, std::span<const double> thresholds,
                           TailScaling scaling) {
  TailTable out;
  out.scaling = scaling;
  // One pass over a sorted copy serves every threshold.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (const double thr : thresholds) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), thr);
    const std::uint64_t count = static_cast<std::uint64_t>(sorted.end() - it);
    out.rows.push_back(make_row(scaling, thr, count, sorted.size()));
  }
  return out;
}

namespace {

// Histograms of min(clearance, h) and of the clearance alone over the
// strided sublattice: the depth-restricted tail at integer threshold n
// counts sites with min(clearance, h) > n out of those with clearance > n.
struct ClearanceHists {
  std::vector<std::uint64_t> capped;     // min(clearance, h)
  std::vector<std::uint64_t> clearance;  // clearance only
};

ClearanceHists clearance_height_hists(const HeightField& hf, std::uint32_t kmax,
                                      std::uint64_t stride) {
  ClearanceHists hists;
  hists.capped.assign(kmax + 2, 0);
  hists.clearance.assign(kmax + 2, 0);
  const std::uint64_t w = hf.box.width;
  const std::uint64_t hh = hf.box.height;
  for (std::uint64_t j = 0; j < hh; j += stride) {
    for (std::uint64_t i = 0; i < w; i += stride) {
      const std::uint64_t depth = i < j ? i : j;
      std::uint64_t m = hf.h[j * w + i];
      if (depth < m) m = depth;
      ++hists.capped[m > kmax ? kmax + 1 : m];
      ++hists.clearance[depth > kmax ? kmax + 1 : depth];
    }
  }
  return hists;
}

std::vector<std::uint64_t> suffix_sums(const std::vector<std::uint64_t>& hist) {
  std::vector<std::uint64_t> suffix(hist.size() + 1, 0);
  for (std::size_t m = hist.size(); m-- > 0;) suffix[m] = suffix[m + 1] + hist[m];
  return suffix;
}

}  // namespace

TailTable height_tail_table(const HeightField& hf, std::span<const double> thresholds,
                            TailScaling scaling, std::uint64_t stride) {
  if (stride == 0) stride = 1;
  std::uint32_t kmax = 0;
  for (const double thr : thresholds) {
    if (thr > kmax) kmax = static_cast<std::uint32_t>(thr);
  }
  const ClearanceHists hists = clearance_height_hists(hf, kmax, stride);
  const std::vector<std::uint64_t> capped = suffix_sums(hists.capped);
  const std::vector<std::uint64_t> clear = suffix_sums(hists.clearance);

  TailTable out;
  out.scaling = scaling;
  for (const double thr : thresholds) {
    const std::size_t n = static_cast<std::size_t>(thr);
    const std::uint64_t total = clear[n + 1];
    const std::uint64_t count = total > 0 ? capped[n + 1] : 0;
    out.rows.push_back(make_row(scaling, thr, count, total));
  }
  return out;
}

std::vector<double> height_tail_survival(const HeightField& hf, std::uint32_t kmax) {
  const ClearanceHists hists = clearance_height_hists(hf, kmax, 1);
  const std::vector<std::uint64_t> capped = suffix_sums(hists.capped);
  const std::vector<std::uint64_t> clear = suffix_sums(hists.clearance);
  // survival[k] = P(h > k-1); the k = 0 entry is 1.
  std::vector<double> survival(kmax + 1, 0.0);
  survival[0] = 1.0;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    const std::uint64_t total = clear[k];
    survival[k] = total > 0 ? static_cast<double>(capped[k]) / static_cast<double>(total) : 0.0;
  }
  return survival;
}

SpeedReport speed_report(const Trajectory& traj, double burn_in_fraction) {
  SpeedReport rep;
  rep.burn_in_fraction = burn_in_fraction;
  rep.steps = traj.steps_taken;
  rep.exited = traj.exited;
  rep.follow_fraction_tail = traj.follow_fraction_tail;
  const Point start = traj.config.start;
  for (const Checkpoint& cp : traj.checkpoints) {
    SpeedPoint p;
    p.n = cp.n;
    const double n = static_cast<double>(cp.n);
    const double dx1 = static_cast<double>(cp.position.x - start.x);
    const double dx2 = static_cast<double>(cp.position.y - start.y);
    p.v1 = dx1 / n;
    p.v2 = dx2 / n;
    p.s_diag = (dx1 + dx2) / n;
    p.s_anti = (dx2 - dx1) / n;
    p.follow_frac_window = cp.follow_frac_window;
    rep.points.push_back(p);
  }
  const std::size_t burn =
      static_cast<std::size_t>(burn_in_fraction * static_cast<double>(rep.points.size()));
  if (rep.points.size() < burn + 2) {
    numeric_error("speed_report: fewer than 2 checkpoints after burn-in");
  }
  rep.s_anti_min = rep.points[burn].s_anti;
  rep.s_anti_max = rep.points[burn].s_anti;
  for (std::size_t i = burn; i < rep.points.size(); ++i) {
    rep.s_anti_min = std::min(rep.s_anti_min, rep.points[i].s_anti);
    rep.s_anti_max = std::max(rep.s_anti_max, rep.points[i].s_anti);
  }
  rep.s_anti_range = rep.s_anti_max - rep.s_anti_min;
  const SpeedPoint& last = rep.points.back();
  rep.final_v1 = last.v1;
  rep.final_v2 = last.v2;
  rep.final_s_diag = last.s_diag;
  rep.final_s_anti = last.s_anti;
  return rep;
}

OscillationResult oscillation_test(std::span<const SpeedReport> reports, double delta,
                                   double required_fraction) {
  OscillationResult out;
  std::size_t passing = 0;
  for (const SpeedReport& r : reports) {
    out.ranges.push_back(r.s_anti_range);
    if (r.s_anti_range > delta) ++passing;
  }
  out.passing_fraction =
      reports.empty() ? 0.0 : static_cast<double>(passing) / static_cast<double>(reports.size());
  out.pass = out.passing_fraction >= required_fraction;
  return out;
}

std::vector<MarginSensitivityRow> margin_sensitivity(const IntensityParams& params,
                                                     const BoxSpec& box,
                                                     std::span<const std::uint64_t> margins,
                                                     std::span<const double> thresholds,
                                                     TailScaling scaling, int threads) {
  if (margins.size() < 2) config_error("margin_sensitivity requires at least two margins");
  std::vector<MarginSensitivityRow> rows;
  LambdaField prev_lambda;
  for (std::size_t mi = 0; mi < margins.size(); ++mi) {
    BoxSpec b = box;
    b.margin = margins[mi];
    const IntensityField field(params, b);
    LambdaField lam = paint_lambda(field, threads);
    const AncestralField anc = ancestral_from_lambda(lam);
    const HeightField hf = heights_from_ancestral(anc);

    MarginSensitivityRow row;
    row.margin = margins[mi];
    row.h_tail = height_tail_table(hf, thresholds, scaling);
    if (mi > 0) {
      std::uint64_t diff = 0;
      for (std::size_t i = 0; i < lam.lambda1.size(); ++i) {
        if (lam.lambda1[i] != prev_lambda.lambda1[i] || lam.lambda2[i] != prev_lambda.lambda2[i]) {
          ++diff;
        }
      }
      row.lambda_disagreements = diff;
      row.lambda_disagreement_frac =
          static_cast<double>(diff) / static_cast<double>(lam.lambda1.size());
      const TailTable& a = rows[mi - 1].h_tail;
      const TailTable& b2 = row.h_tail;
      for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].excluded || b2.rows[r].excluded) continue;
        const double d = std::abs(a.rows[r].survival - b2.rows[r].survival);
        row.max_survival_diff = std::max(row.max_survival_diff, d);
        const double widths =
            (a.rows[r].wilson_hi - a.rows[r].wilson_lo) + (b2.rows[r].wilson_hi - b2.rows[r].wilson_lo);
        if (d >= widths) row.within_wilson = false;
      }
    }
    rows.push_back(std::move(row));
    prev_lambda = std::move(lam);
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) numeric_error("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double trend_slope(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += values[i];
    sxx += x * x;
    sxy += x * values[i];
  }
  const double d = static_cast<double>(n) * sxx - sx * sx;
  return d == 0.0 ? 0.0 : (static_cast<double>(n) * sxy - sx * sy) / d;
}

}  // namespace rwlab
