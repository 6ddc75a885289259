#include "core/intensity.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace rwlab {

namespace {

constexpr double kMinTheta_Straight = 2.8284271247461903;  // 2*sqrt(2)
constexpr double kMinTheta_Diagonal = 10.0;

double diag_survival_tail(double t, double theta) { return theta * std::log(t) / (t * t); }

// Solve theta*log(t)/t^2 = u for t >= n0 by Newton iteration in y = log(t).
// F(y) = log(theta) + log(y) - 2y - log(u) is strictly decreasing on y > 1/2.
double diag_invert_newton(double u, double theta, double n0) {
  const double target = std::log(theta) - std::log(u);
  const double ymin = std::log(n0);
  double y = 0.5 * target;
  if (y < ymin) y = ymin;
  for (int it = 0; it < 64; ++it) {
    const double f = std::log(y) - 2.0 * y + target;
    const double fp = 1.0 / y - 2.0;
    double ynew = y - f / fp;
    if (ynew < ymin) ynew = ymin;
    if (std::abs(ynew - y) <= 1e-15 * y) {
      y = ynew;
      break;
    }
    y = ynew;
  }
  return std::exp(y);
}

}  // namespace

namespace detail {

// The diagonal tail inversion is the hot inner loop of environment
// generation (most sites land above the cutoff). A Hermite table indexed by
// the bit pattern of u plus a single Newton polish replaces the iterative
// solve; one log per call instead of six or seven transcendentals.
struct DiagInverseTable {
  static constexpr int kNodesLog2 = 5;  // 32 sub-intervals per binade
  static constexpr int kMinExp = -48;   // covers u down to ~3.6e-15
  double theta = 0.0;
  double n0d = 0.0;
  std::vector<double> value;      // t at node
  std::vector<double> derivative; // dt/du at node

  // Node u values: for binade e (u in [2^e, 2^{e+1})), node j at
  // u = 2^e * (1 + j/32).
  static double node_u(int e, int j) {
    return std::ldexp(1.0 + static_cast<double>(j) / 32.0, e);
  }

  void build(double theta_in, std::uint32_t n0) {
    theta = theta_in;
    n0d = static_cast<double>(n0);
    const int binades = 1 - kMinExp;  // exponents kMinExp .. 0
    value.resize(static_cast<std::size_t>(binades) * 33);
    derivative.resize(value.size());
    for (int e = kMinExp; e <= 0; ++e) {
      for (int j = 0; j <= 32; ++j) {
        const double u = node_u(e, j);
        // Analytic continuation below the root-existence ceiling keeps the
        // interpolation support smooth even above the cutoff mass.
        const double t = diag_invert_newton(u, theta, std::exp(0.6));
        const std::size_t idx = static_cast<std::size_t>(e - kMinExp) * 33 +
                                static_cast<std::size_t>(j);
        value[idx] = t;
        // du/dt = theta (1 - 2 log t)/t^3.
        derivative[idx] = t * t * t / (theta * (1.0 - 2.0 * std::log(t)));
      }
    }
  }

  double invert(double u) const {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(u);
    const int e = static_cast<int>((bits >> 52) & 0x7ff) - 1023;
    if (e < kMinExp) return diag_invert_newton(u, theta, n0d);
    // Top 5 mantissa bits select the sub-interval.
    const int j = static_cast<int>((bits >> (52 - kNodesLog2)) & 31);
    const std::size_t idx =
        static_cast<std::size_t>(e - kMinExp) * 33 + static_cast<std::size_t>(j);
    const double u0 = node_u(e, j);
    const double u1 = node_u(e, j + 1);
    const double h = u1 - u0;
    const double s = (u - u0) / h;
    const double t0 = value[idx], t1 = value[idx + 1];
    const double d0 = derivative[idx] * h, d1 = derivative[idx + 1] * h;
    const double s2 = s * s, s3 = s2 * s;
    double t = (2 * s3 - 3 * s2 + 1) * t0 + (s3 - 2 * s2 + s) * d0 +
               (-2 * s3 + 3 * s2) * t1 + (s3 - s2) * d1;
    // One Newton step in t-space: F(t) = theta log t - u t^2.
    const double F = theta * std::log(t) - u * t * t;
    const double Fp = theta / t - 2.0 * u * t;
    t -= F / Fp;
    return t;
  }
};

namespace {

std::shared_ptr<const DiagInverseTable> table_for(double theta, std::uint32_t n0) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint32_t>,
                  std::shared_ptr<const DiagInverseTable>>
      cache;
  const std::pair<std::uint64_t, std::uint32_t> key{std::bit_cast<std::uint64_t>(theta), n0};
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) {
    auto table = std::make_shared<DiagInverseTable>();
    table->build(theta, n0);
    slot = std::move(table);
  }
  return slot;
}

}  // namespace

}  // namespace detail

const char* model_name(Model m) { return m == Model::Straight ? "STRAIGHT" : "DIAGONAL"; }

void IntensityParams::validate() const {
  if (n0 < 1) config_error("intensity cutoff n0 must be a positive integer");
  const double n0sq = static_cast<double>(n0) * static_cast<double>(n0);
  if (model == Model::Straight) {
    if (!(theta >= kMinTheta_Straight && theta <= n0sq)) {
      config_error("STRAIGHT model requires 2*sqrt(2) <= theta <= n0^2 (got theta=" +
                   std::to_string(theta) + ", n0=" + std::to_string(n0) + ")");
    }
  } else {
    if (!(theta >= kMinTheta_Diagonal && theta <= n0sq)) {
      config_error("DIAGONAL model requires 10 <= theta <= n0^2 (got theta=" +
                   std::to_string(theta) + ", n0=" + std::to_string(n0) + ")");
    }
  }
  const double p0 = cutoff_mass();
  if (!(p0 > 0.0 && p0 <= 1.0)) {
    config_error("survival mass at cutoff must lie in (0,1], got " + std::to_string(p0) +
                 " for theta=" + std::to_string(theta) + ", n0=" + std::to_string(n0));
  }
}

double IntensityParams::cutoff_mass() const {
  const double n0d = static_cast<double>(n0);
  if (model == Model::Straight) return theta / (n0d * n0d);
  return theta * std::log(n0d) / (n0d * n0d);
}

double IntensityParams::survival(double t) const {
  const double n0d = static_cast<double>(n0);
  if (t <= 1.0) return 1.0;
  if (t >= n0d) {
    if (model == Model::Straight) return theta / (t * t);
    return diag_survival_tail(t, theta);
  }
  const double p0 = cutoff_mass();
  return 1.0 - (1.0 - p0) * (t - 1.0) / (n0d - 1.0);
}

void IntensityParams::prepare() const {
  if (model == Model::Diagonal && !diag_table_) {
    diag_table_ = detail::table_for(theta, n0);
  }
}

double IntensityParams::invert_survival(double u) const {
  const double n0d = static_cast<double>(n0);
  const double p0 = cutoff_mass();
  double t;
  if (u <= p0) {
    if (model == Model::Straight) {
      t = std::sqrt(theta / u);
    } else {
      if (!diag_table_) prepare();
      t = diag_table_->invert(u);
    }
  } else {
    t = 1.0 + (1.0 - u) * (n0d - 1.0) / (1.0 - p0);
  }
  // Keep L(x) > 1 strict even when rounding would collapse to 1.
  if (t <= 1.0) t = std::nextafter(1.0, 2.0);
  return t;
}

double invert_survival_diagonal(double u, double theta, std::uint32_t n0) {
  const double n0d = static_cast<double>(n0);
  const double p0 = theta * std::log(n0d) / (n0d * n0d);
  if (!(u > 0.0 && u <= p0)) {
    config_error("invert_survival_diagonal requires 0 < u <= theta*log(n0)/n0^2");
  }
  double lo = n0d;
  double hi = n0d;
  int it = 0;
  while (diag_survival_tail(hi, theta) > u) {
    lo = hi;
    hi *= 2.0;
    if (++it > 1100) numeric_error("invert_survival_diagonal: bracket did not close");
  }
  for (it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (diag_survival_tail(mid, theta) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * hi) return 0.5 * (lo + hi);
  }
  numeric_error("invert_survival_diagonal: no convergence after max iterations");
  return 0.0;
}

double site_intensity(const IntensityParams& params, const Point& x) {
  const SiteHash hash(derive_stream(params.seed, StreamTag::Intensity));
  return params.invert_survival(unit_open(hash.bits(x)));
}

}  // namespace rwlab
