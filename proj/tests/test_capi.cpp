#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <string>

#include "rwlab.h"

namespace {

std::string tmp_dir(const char* leaf) {
  const auto dir = std::filesystem::temp_directory_path() / "rwlab_capi" / leaf;
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("version and error strings exist") {
  CHECK(std::strlen(rwlab_version()) > 0);
  CHECK(rwlab_last_error() != nullptr);
}

TEST_CASE("config parse, serialize and mutate") {
  rwlab_config_t* cfg = nullptr;
  REQUIRE(rwlab_config_parse("model = STRAIGHT\nwidth = 64\nheight = 64\nseeds = 1,2\n",
                             &cfg) == RWLAB_OK);
  char* text = nullptr;
  REQUIRE(rwlab_config_serialize(cfg, &text) == RWLAB_OK);
  CHECK(std::string(text).find("model = STRAIGHT") != std::string::npos);
  rwlab_string_free(text);

  CHECK(rwlab_config_set_seed(cfg, 42) == RWLAB_OK);
  REQUIRE(rwlab_config_serialize(cfg, &text) == RWLAB_OK);
  CHECK(std::string(text).find("seeds = 42") != std::string::npos);
  rwlab_string_free(text);
  rwlab_config_free(cfg);

  rwlab_config_t* bad = nullptr;
  CHECK(rwlab_config_parse("model = DIAGONAL\ntheta = 20\nn0 = 4\n", &bad) == RWLAB_ERR_CONFIG);
  CHECK(std::string(rwlab_last_error()).find("n0^2") != std::string::npos);
}

TEST_CASE("environment handle exposes heights and directions") {
  rwlab_config_t* cfg = nullptr;
  REQUIRE(rwlab_config_parse("model = STRAIGHT\nwidth = 48\nheight = 48\nmargin = 64\nseeds = 7\n",
                             &cfg) == RWLAB_OK);
  rwlab_env_t* env = nullptr;
  REQUIRE(rwlab_env_generate(cfg, 7, 1, &env) == RWLAB_OK);

  // Inside the box: directions are 1|2, heights nonnegative, parent chains rise.
  for (int64_t j = 0; j < 48; ++j) {
    for (int64_t i = 0; i < 48; ++i) {
      const int dir = rwlab_env_direction(env, i, j);
      CHECK((dir == 1 || dir == 2));
      const int64_t h = rwlab_env_height(env, i, j);
      CHECK(h >= 0);
      const int64_t px = dir == 1 ? i + 1 : i;
      const int64_t py = dir == 1 ? j : j + 1;
      const int64_t hp = rwlab_env_height(env, px, py);
      if (hp >= 0) CHECK(hp >= h + 1);
    }
  }
  CHECK(rwlab_env_height(env, -1, 0) == -1);
  CHECK(rwlab_env_direction(env, 48, 0) == 0);
  CHECK(rwlab_env_exact(env, 0, 0) == 0);  // zero clearance is never certified

  // Save and reload through the C surface.
  const std::string path = tmp_dir("env") + "/env.umbr";
  REQUIRE(rwlab_env_save(env, path.c_str()) == RWLAB_OK);
  rwlab_env_t* loaded = nullptr;
  REQUIRE(rwlab_env_load(path.c_str(), &loaded) == RWLAB_OK);
  for (int64_t j = 0; j < 48; j += 7) {
    for (int64_t i = 0; i < 48; i += 5) {
      CHECK(rwlab_env_height(loaded, i, j) == rwlab_env_height(env, i, j));
      CHECK(rwlab_env_direction(loaded, i, j) == rwlab_env_direction(env, i, j));
      CHECK(rwlab_env_exact(loaded, i, j) == rwlab_env_exact(env, i, j));
    }
  }
  rwlab_env_free(loaded);
  rwlab_env_free(env);
  rwlab_config_free(cfg);
}

TEST_CASE("commands run end to end through the C interface") {
  rwlab_config_t* cfg = nullptr;
  REQUIRE(rwlab_config_parse(
              "model = STRAIGHT\nwidth = 64\nheight = 64\nmargin = 64\nseeds = 1\n"
              "steps = 2000\nvc_kernels = 3\nvc_size = 4\nvc_nmax = 20\n"
              "thresholds = 4,8\nt_thresholds = 4,8\nwidth = 64\n",
              &cfg) == RWLAB_OK);
  const std::string dir = tmp_dir("run");
  std::filesystem::remove_all(dir);

  char* summary = nullptr;
  REQUIRE(rwlab_run(cfg, "generate", dir.c_str(), 1, &summary) == RWLAB_OK);
  CHECK(std::string(summary).find("max_h=") != std::string::npos);
  rwlab_string_free(summary);

  REQUIRE(rwlab_run(cfg, "walk", dir.c_str(), 1, &summary) == RWLAB_OK);
  CHECK(std::string(summary).find("traj_seed1") != std::string::npos);
  rwlab_string_free(summary);

  REQUIRE(rwlab_run(cfg, "vc", dir.c_str(), 1, &summary) == RWLAB_OK);
  CHECK(std::string(summary).find("violations=0") != std::string::npos);
  rwlab_string_free(summary);

  CHECK(rwlab_run(cfg, "bogus", dir.c_str(), 1, &summary) == RWLAB_ERR_CONFIG);
  rwlab_config_free(cfg);
}
