#pragma once

#include <cstdint>
#include <memory>

#include "core/geometry.hpp"
#include "core/hash_rng.hpp"

namespace rwlab {

enum class Model : std::uint8_t { Straight = 0, Diagonal = 1 };

const char* model_name(Model m);

namespace detail {
struct DiagInverseTable;
}

// Umbrella strength law. Above the cutoff n0 the survival is theta/t^2
// (straight) or theta*log(t)/t^2 (diagonal); below it the mass is uniform
// on (1, n0].
struct IntensityParams {
  Model model = Model::Straight;
  double theta = 3.0;
  std::uint32_t n0 = 2;
  std::uint64_t seed = 1;

  void validate() const;

  // Survival mass at the cutoff, P(L > n0).
  double cutoff_mass() const;
  // P(L > t) for t >= 1.
  double survival(double t) const;
  // Unique t with survival(t) == u, for u in (0, 1).
  double invert_survival(double u) const;

  // Builds the diagonal inversion table ahead of concurrent use. Callers
  // that share one params instance across threads invoke this first; the
  // result is bitwise identical either way.
  void prepare() const;

  // Internal inversion cache; leave defaulted.
  mutable std::shared_ptr<const detail::DiagInverseTable> diag_table_;
};

// Bracketed bisection for theta*log(t)/t^2 == u on t >= n0, to relative
// tolerance 1e-12. Throws a numeric error if the bracket fails to close.
double invert_survival_diagonal(double u, double theta, std::uint32_t n0);

double site_intensity(const IntensityParams& params, const Point& x);

// Lazy site-addressable field of umbrella strengths; values are pure
// functions of (seed, site) and are never stored.
class IntensityField {
public:
  IntensityField(IntensityParams params, BoxSpec box)
      : params_(params), box_(box), hash_(derive_stream(params.seed, StreamTag::Intensity)) {
    params_.validate();
    params_.prepare();
    box_.validate();
  }

  const IntensityParams& params() const { return params_; }
  const BoxSpec& box() const { return box_; }
  const SiteHash& hash() const { return hash_; }

  double unit(const Point& p) const { return unit_open(hash_.bits(p)); }
  double value(const Point& p) const { return params_.invert_survival(unit(p)); }

private:
  IntensityParams params_;
  BoxSpec box_;
  SiteHash hash_;
};

}  // namespace rwlab
