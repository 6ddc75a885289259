/* rwlab — random walks among random conductances on Z^2.
 *
 * C interface to the simulation core. All functions return a status code:
 *   0 success, 2 configuration error, 3 numeric/invariant failure, 4 I/O.
 * On failure rwlab_last_error() describes the problem (thread-local).
 * Strings returned through char** are heap-allocated; release them with
 * rwlab_string_free. Handles are opaque; release with the matching _free.
 */
#ifndef RWLAB_H
#define RWLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RWLAB_OK 0
#define RWLAB_ERR_CONFIG 2
#define RWLAB_ERR_NUMERIC 3
#define RWLAB_ERR_IO 4

typedef struct rwlab_config_s rwlab_config_t;
typedef struct rwlab_env_s rwlab_env_t;

const char* rwlab_version(void);
const char* rwlab_last_error(void);
void rwlab_string_free(char* s);

/* Configuration: flat key-value text, one `key = value` per line. */
int rwlab_config_parse(const char* text, rwlab_config_t** out);
int rwlab_config_load(const char* path, rwlab_config_t** out);
int rwlab_config_serialize(const rwlab_config_t* cfg, char** text);
int rwlab_config_set_seed(rwlab_config_t* cfg, uint64_t seed);
int rwlab_config_set_out_dir(rwlab_config_t* cfg, const char* dir);
void rwlab_config_free(rwlab_config_t* cfg);

/* Experiment commands: "generate", "walk", "tails", "vc" or "report".
 * out_dir may be NULL to use the configured directory; threads <= 0 picks a
 * default. On success *summary receives a human-readable report. */
int rwlab_run(const rwlab_config_t* cfg, const char* command, const char* out_dir, int threads,
              char** summary);

/* Direct environment access. */
int rwlab_env_generate(const rwlab_config_t* cfg, uint64_t seed, int threads, rwlab_env_t** out);
int rwlab_env_load(const char* umbr_path, rwlab_env_t** out);
int rwlab_env_save(const rwlab_env_t* env, const char* umbr_path);
/* Height of the longest in-box descendant chain; -1 outside the box. */
int64_t rwlab_env_height(const rwlab_env_t* env, int64_t x, int64_t y);
/* Parent direction 1 (+e1) or 2 (+e2); 0 outside the box. */
int rwlab_env_direction(const rwlab_env_t* env, int64_t x, int64_t y);
/* 1 if the height is certified exact, 0 if boundary-clipped, -1 outside. */
int rwlab_env_exact(const rwlab_env_t* env, int64_t x, int64_t y);
uint64_t rwlab_env_tiebreaks(const rwlab_env_t* env);
void rwlab_env_free(rwlab_env_t* env);

#ifdef __cplusplus
}
#endif

#endif /* RWLAB_H */
