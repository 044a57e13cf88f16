/* C API for the segen pipeline library.
 *
 * All functions return a status code (segen_status). On failure a
 * human-readable message is available from segen_last_error() until the
 * next call on the same thread.
 */
#ifndef SEGEN_H
#define SEGEN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum segen_status {
    SEGEN_OK = 0,
    SEGEN_ERR_USAGE = 2,   /* bad option, key, or value */
    SEGEN_ERR_DATA = 3,    /* unreadable or malformed input data */
    SEGEN_ERR_NUMERIC = 4, /* numeric failure during the run */
} segen_status;

/* Opaque run configuration handle. */
typedef struct segen_config segen_config;

/* Creates a configuration with the built-in defaults. Never fails. */
segen_config* segen_config_new(void);
void segen_config_free(segen_config* cfg);

/* Applies a named parameter preset ("ps1".."ps5"). */
segen_status segen_config_apply_preset(segen_config* cfg, const char* name);

/* Loads a flat "key = value" configuration file ('#' comments). */
segen_status segen_config_load_file(segen_config* cfg, const char* path);

/* Sets one key from its textual value; unknown keys are rejected. */
segen_status segen_config_set(segen_config* cfg, const char* key,
                              const char* value);

/* Writes the fully resolved "key = value" snapshot into buf (truncating to
 * buf_size, always NUL-terminated). */
segen_status segen_config_snapshot(const segen_config* cfg, char* buf,
                                   size_t buf_size);

/* Executes one pipeline stage: "sample", "train", "eval", or "run".
 * Artifacts are written into the configured output directory. */
segen_status segen_run(const segen_config* cfg, const char* subcommand);

/* Message for the most recent failure on this thread ("" if none). */
const char* segen_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* SEGEN_H */
