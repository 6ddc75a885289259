#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/stats.hpp"

namespace rwlab {

struct CommandResult {
  std::vector<std::string> lines;     // human-readable summary
  std::vector<std::string> warnings;
  std::vector<std::string> files;     // emitted artifact paths
};

CommandResult run_generate(const ExperimentConfig& cfg, const std::string& out_dir, int threads);
CommandResult run_walk(const ExperimentConfig& cfg, const std::string& out_dir, int threads);
CommandResult run_tails(const ExperimentConfig& cfg, const std::string& out_dir, int threads);
CommandResult run_vc(const ExperimentConfig& cfg, const std::string& out_dir, int threads);
CommandResult run_report(const ExperimentConfig& cfg, const std::string& out_dir, int threads);

CommandResult run_command(const ExperimentConfig& cfg, const std::string& command,
                          const std::string& out_dir, int threads);

// Shared building blocks, also used by the test suites.

struct BuiltEnv {
  IntensityParams params;
  LambdaField lambda;
  AncestralField ancestral;
  HeightField heights;
  std::uint64_t tiebreaks = 0;
};

BuiltEnv build_tree_env(const IntensityParams& params, const BoxSpec& box, int threads,
                        bool keep_lambda);

// One seeded walk in the configured environment; used by walk experiments.
SpeedReport run_one_walk(const ExperimentConfig& cfg, std::uint64_t seed, Trajectory* traj_out);

// Random reversible kernel for the bound-checker suites.
ConductanceField random_vc_kernel(std::uint64_t seed, std::uint64_t size, double logw_max);

}  // namespace rwlab
