// Command-line front end; drives the shared library through its C interface.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "rwlab.h"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed_override = -1;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config file")->required();
  cmd->add_option("--out", opts.out_dir, "output directory (overrides config)");
  cmd->add_option("--seed-override", opts.seed_override, "replace the seed list with one seed");
  cmd->add_option("--threads", opts.threads, "worker threads (results are invariant to this)");
}

int run(const std::string& command, const CommonOpts& opts) {
  rwlab_config_t* cfg = nullptr;
  int rc = rwlab_config_load(opts.config_path.c_str(), &cfg);
  if (rc != RWLAB_OK) {
    std::fprintf(stderr, "error: %s\n", rwlab_last_error());
    return rc;
  }
  if (opts.seed_override >= 0) {
    rwlab_config_set_seed(cfg, static_cast<std::uint64_t>(opts.seed_override));
  }
  char* summary = nullptr;
  rc = rwlab_run(cfg, command.c_str(), opts.out_dir.empty() ? nullptr : opts.out_dir.c_str(),
                 opts.threads, &summary);
  if (rc != RWLAB_OK) {
    std::fprintf(stderr, "error: %s\n", rwlab_last_error());
  } else if (summary != nullptr) {
    std::fputs(summary, stdout);
  }
  rwlab_string_free(summary);
  rwlab_config_free(cfg);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random walks among random conductances: environment generation, walk "
               "simulation, tail statistics and kernel-bound checks"};
  app.require_subcommand(1);

  const char* commands[] = {"generate", "walk", "tails", "vc", "report"};
  const char* descriptions[] = {
      "generate an environment and write binary snapshots",
      "run seeded random walks and write trajectory CSVs plus a speed summary",
      "compute height/strength tail tables over certified sites",
      "verify the universal transition-kernel upper bound on random reversible chains",
      "log-moment scaling report across box doublings",
  };

  CommonOpts opts[5];
  for (int i = 0; i < 5; ++i) {
    CLI::App* cmd = app.add_subcommand(commands[i], descriptions[i]);
    add_common(cmd, opts[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 5; ++i) {
    if (app.get_subcommand(commands[i])->parsed()) return run(commands[i], opts[i]);
  }
  return RWLAB_ERR_CONFIG;
}
