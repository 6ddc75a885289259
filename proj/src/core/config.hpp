#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/conductance.hpp"
#include "core/geometry.hpp"
#include "core/intensity.hpp"

namespace rwlab {

enum class EnvKind : std::uint8_t { Straight = 0, Diagonal = 1, Iid = 2 };
enum class WalkBackend : std::uint8_t { Auto = 0, Box = 1, Lazy = 2 };

const char* env_kind_name(EnvKind k);

// Flat key-value experiment description. Grammar: one `key = value` per
// line (`:` also accepted), `#` starts a comment, lists are comma separated.
struct ExperimentConfig {
  EnvKind model = EnvKind::Straight;
  double theta = 3.0;
  std::uint32_t n0 = 2;
  double A = 1.25;
  double beta = 2.0;
  std::int64_t origin_x = 0;
  std::int64_t origin_y = 0;
  std::uint64_t width = 512;
  std::uint64_t height = 512;
  std::uint64_t margin = 1024;
  std::vector<std::uint64_t> seeds = {1};
  std::uint64_t steps = 1000000;
  double gamma = 1.2;
  std::vector<std::uint64_t> checkpoints;
  bool start_set = false;
  std::int64_t start_x = 0;
  std::int64_t start_y = 0;
  bool stop_on_exit = true;
  WalkBackend walk_env = WalkBackend::Auto;
  std::uint64_t walk_margin = 4096;
  std::vector<double> thresholds = {32, 64, 128, 256, 512};
  std::vector<double> t_thresholds = {16, 32, 64, 128, 256, 512};
  double burn_in = 0.1;
  double osc_delta = 0.1;
  double osc_frac = 0.5;
  std::uint64_t vc_kernels = 100;
  std::uint64_t vc_size = 5;
  double vc_logw_max = 3.0;
  std::uint64_t vc_nmax = 50;
  double vc_bound_scale = 1.0;
  double alpha_finite = 0.7;
  double alpha_divergent = 1.0;
  std::uint32_t doublings = 3;
  std::string out_dir = "out";

  BoxSpec box() const {
    return {{origin_x, origin_y}, width, height, margin};
  }
  IntensityParams intensity(std::uint64_t seed) const;
  ConductanceParams conductance() const;
  IidLogParams iid(std::uint64_t seed) const;
  Point walk_start() const;
  WalkBackend resolved_backend() const;

  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

// Short hex digest of the canonical serialization, out_dir excluded,
// used to fingerprint emitted file names.
std::string config_fingerprint(const ExperimentConfig& cfg);

}  // namespace rwlab
