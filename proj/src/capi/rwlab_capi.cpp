#include "rwlab.h"

#include <cstring>
#include <exception>
#include <string>

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/snapshot.hpp"

namespace {

thread_local std::string g_last_error;

int capture(const std::exception& e) {
  g_last_error = e.what();
  const auto* err = dynamic_cast<const rwlab::Error*>(&e);
  return err != nullptr ? static_cast<int>(err->status()) : RWLAB_ERR_NUMERIC;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct rwlab_config_s {
  rwlab::ExperimentConfig cfg;
};

struct rwlab_env_s {
  rwlab::IntensityParams params;
  rwlab::HeightField heights;
  rwlab::AncestralField ancestral;
  std::uint64_t tiebreaks = 0;
};

extern "C" {

const char* rwlab_version(void) { return "rwlab 1.0.0"; }

const char* rwlab_last_error(void) { return g_last_error.c_str(); }

void rwlab_string_free(char* s) { delete[] s; }

int rwlab_config_parse(const char* text, rwlab_config_t** out) {
  if (text == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return RWLAB_ERR_CONFIG;
  }
  try {
    auto* handle = new rwlab_config_s{rwlab::parse_config(text)};
    *out = handle;
    return RWLAB_OK;
  } catch (const std::exception& e) {
    return capture(e);
  }
}

int rwlab_config_load(const char* path, rwlab_config_t** out) {
  if (path == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return RWLAB_ERR_CONFIG;
  }
  try {
    auto* handle = new rwlab_config_s{rwlab::load_config(path)};
    *out = handle;
    return RWLAB_OK;
  } catch (const std::exception& e) {
    return capture(e);
  }
}

int rwlab_config_serialize(const rwlab_config_t* cfg, char** text) {
  if (cfg == nullptr || text == nullptr) {
    g_last_error = "null argument";
    return RWLAB_ERR_CONFIG;
  }
  try {
    *text = dup_string(rwlab::serialize_config(cfg->cfg));
    return RWLAB_OK;
  } catch (const std::exception& e) {
    return capture(e);
  }
}

int rwlab_config_set_seed(rwlab_config_t* cfg, uint64_t seed) {
  if (cfg == nullptr) {
    g_last_error = "null config";
    return RWLAB_ERR_CONFIG;
  }
  cfg->cfg.seeds = {seed};
  return RWLAB_OK;
}

int rwlab_config_set_out_dir(rwlab_config_t* cfg, const char* dir) {
  if (cfg == nullptr || dir == nullptr) {
    g_last_error = "null argument";
    return RWLAB_ERR_CONFIG;
  }
  cfg->cfg.out_dir = dir;
  return RWLAB_OK;
}

void rwlab_config_free(rwlab_config_t* cfg) { delete cfg; }

int rwlab_run(const rwlab_config_t* cfg, const char* command, const char* out_dir, int threads,
              char** summary) {
  if (cfg == nullptr || command == nullptr) {
    g_last_error = "null argument";
    return RWLAB_ERR_CONFIG;
  }
  try {
    const rwlab::CommandResult res = rwlab::run_command(
        cfg->cfg, command, out_dir == nullptr ? std::string() : std::string(out_dir), threads);
    if (summary != nullptr) {
      std::string text;
      for (const std::string& w : res.warnings) text += "warning: " + w + "\n";
      for (const std::string& l : res.lines) text += l + "\n";
      for (const std::string& f : res.files) text += "wrote " + f + "\n";
      *summary = dup_string(text);
    }
    return RWLAB_OK;
  } catch (const std::exception& e) {
    return capture(e);
  }
}

int rwlab_env_generate(const rwlab_config_t* cfg, uint64_t seed, int threads, rwlab_env_t** out) {
  if (cfg == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return RWLAB_ERR_CONFIG;
  }
  try {
    rwlab::BuiltEnv env =
        rwlab::build_tree_env(cfg->cfg.intensity(seed), cfg->cfg.box(), threads, false);
    auto* handle = new rwlab_env_s;
    handle->params = env.params;
    handle->heights = std::move(env.heights);
    handle->ancestral = std::move(env.ancestral);
    handle->tiebreaks = env.tiebreaks;
    *out = handle;
    return RWLAB_OK;
  } catch (const std::exception& e) {
    return capture(e);
  }
}

int rwlab_env_load(const char* umbr_path, rwlab_env_t** out) {
  if (umbr_path == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return RWLAB_ERR_CONFIG;
  }
  try {
    rwlab::EnvSnapshot snap = rwlab::read_env_snapshot(umbr_path);
    auto* handle = new rwlab_env_s;
    handle->params.model = static_cast<rwlab::Model>(snap.kind);
    handle->params.theta = snap.theta;
    handle->params.n0 = snap.n0;
    handle->params.seed = snap.seed;
    handle->heights = std::move(snap.heights);
    handle->ancestral = std::move(snap.ancestral);
    *out = handle;
    return RWLAB_OK;
  } catch (const std::exception& e) {
    return capture(e);
  }
}

int rwlab_env_save(const rwlab_env_t* env, const char* umbr_path) {
  if (env == nullptr || umbr_path == nullptr) {
    g_last_error = "null argument";
    return RWLAB_ERR_CONFIG;
  }
  try {
    rwlab::write_env_snapshot(umbr_path, env->params, env->heights, env->ancestral);
    return RWLAB_OK;
  } catch (const std::exception& e) {
    return capture(e);
  }
}

int64_t rwlab_env_height(const rwlab_env_t* env, int64_t x, int64_t y) {
  if (env == nullptr || !env->heights.box.contains({x, y})) return -1;
  return env->heights.h[env->heights.box.index({x, y})];
}

int rwlab_env_direction(const rwlab_env_t* env, int64_t x, int64_t y) {
  if (env == nullptr || !env->ancestral.box.contains({x, y})) return 0;
  return env->ancestral.dir[env->ancestral.box.index({x, y})];
}

int rwlab_env_exact(const rwlab_env_t* env, int64_t x, int64_t y) {
  if (env == nullptr || !env->heights.box.contains({x, y})) return -1;
  return env->heights.exact[env->heights.box.index({x, y})];
}

uint64_t rwlab_env_tiebreaks(const rwlab_env_t* env) {
  return env == nullptr ? 0 : env->tiebreaks;
}

void rwlab_env_free(rwlab_env_t* env) { delete env; }

}  // extern "C"
