#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/fields.hpp"
#include "core/geometry.hpp"
#include "core/intensity.hpp"
#include "core/walker.hpp"

namespace rwlab {

enum class TailScaling { NLinear, NLog2, TLogT };

const char* tail_scaling_name(TailScaling s);

struct TailRow {
  double threshold = 0.0;
  std::uint64_t count = 0;
  std::uint64_t total = 0;
  double survival = 0.0;
  double scaled = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  bool excluded = false;  // no certified samples at this threshold
};

struct TailTable {
  TailScaling scaling = TailScaling::NLinear;
  std::vector<TailRow> rows;
};

// 95% Wilson score interval; zero-count buckets report the rule-of-three
// upper bound 3/n instead.
void wilson_interval(std::uint64_t count, std::uint64_t total, double& lo, double& hi);

struct TailSample {
  double value;
  std::int64_t cert_depth;  // sample certified for thresholds below this depth
};

TailTable tail_table(std::span<const TailSample> samples, std::span<const double> thresholds,
                     TailScaling scaling);

// Fully certified samples (no truncation concern), e.g. lambda values.
TailTable value_tail_table(std::span<const double> values, std::span<const double> thresholds,
                           TailScaling scaling);

// Depth-restricted height tail: threshold n uses only sites with clearance
// above n, where the computed height is provably exact above or below n.
// stride > 1 samples the certified sublattice, for protocols pinned to a
// sample budget.
TailTable height_tail_table(const HeightField& hf, std::span<const double> thresholds,
                            TailScaling scaling, std::uint64_t stride = 1);

// Survival curve P(h > k-1) for k = 0..kmax, depth-restricted as above.
std::vector<double> height_tail_survival(const HeightField& hf, std::uint32_t kmax);

struct SpeedPoint {
  std::uint64_t n = 0;
  double v1 = 0.0, v2 = 0.0;
  double s_diag = 0.0, s_anti = 0.0;
  double follow_frac_window = 0.0;
};

struct SpeedReport {
  std::vector<SpeedPoint> points;
  double burn_in_fraction = 0.1;
  double s_anti_min = 0.0, s_anti_max = 0.0, s_anti_range = 0.0;  // post burn-in
  double final_v1 = 0.0, final_v2 = 0.0;
  double final_s_diag = 0.0, final_s_anti = 0.0;
  double follow_fraction_tail = 0.0;
  std::uint64_t steps = 0;
  bool exited = false;
};

// Speeds are displacements from the start divided by the step count.
SpeedReport speed_report(const Trajectory& traj, double burn_in_fraction = 0.1);

struct OscillationResult {
  bool pass = false;
  double passing_fraction = 0.0;
  std::vector<double> ranges;  // per report, post burn-in s_anti range
};

OscillationResult oscillation_test(std::span<const SpeedReport> reports, double delta,
                                   double required_fraction = 0.5);

struct MarginSensitivityRow {
  std::uint64_t margin = 0;
  TailTable h_tail;
  std::uint64_t lambda_disagreements = 0;  // vs previous margin row
  double lambda_disagreement_frac = 0.0;
  double max_survival_diff = 0.0;           // vs previous margin row
  bool within_wilson = true;                // diffs below combined interval widths
};

std::vector<MarginSensitivityRow> margin_sensitivity(const IntensityParams& params,
                                                     const BoxSpec& box,
                                                     std::span<const std::uint64_t> margins,
                                                     std::span<const double> thresholds,
                                                     TailScaling scaling, int threads = 0);

double median(std::vector<double> values);

// Least-squares slope of values against their index; the trend tests reduce
// to the sign of this.
double trend_slope(std::span<const double> values);

}  // namespace rwlab
