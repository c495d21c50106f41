/* Copyright 2026 The Trailforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Public C interface of the trailforge shared library. All state lives in
 * opaque handles; every fallible call returns a tf_status and leaves a
 * human-readable message in tf_last_error() on failure.
 */

#ifndef TRAILFORGE_TRAILFORGE_H_
#define TRAILFORGE_TRAILFORGE_H_

#include <stddef.h>

#if defined(_WIN32)
#define TF_API __declspec(dllexport)
#else
#define TF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
  TF_OK = 0,
  TF_ERROR_CONFIG = 1, /* bad key, bad value, or invariant violation */
  TF_ERROR_IO = 2,     /* unreadable or unwritable files */
  TF_ERROR_STAGE = 3,  /* a pipeline stage failed */
  TF_ERROR_ARGUMENT = 4
} tf_status;

typedef struct tf_config tf_config;
typedef struct tf_diagnostics tf_diagnostics;

TF_API const char* tf_version(void);

/* Thread-local message describing the most recent failure in this thread.
 * Valid until the next failing call. */
TF_API const char* tf_last_error(void);

/* Configuration: defaults, then optional file, then individual overrides.
 * Precedence is determined by call order (later set() wins). */
TF_API tf_config* tf_config_new(void);
TF_API void tf_config_free(tf_config* cfg);
TF_API tf_status tf_config_load_file(tf_config* cfg, const char* path);
TF_API tf_status tf_config_set(tf_config* cfg, const char* key, const char* value);

/* Copies the value into buf (NUL-terminated, truncating if needed). */
TF_API tf_status tf_config_get(const tf_config* cfg, const char* key, char* buf,
                               size_t buf_size);

/* Invariant checks without touching any images. An empty diagnostics list
 * means the configuration is runnable. */
TF_API tf_status tf_validate(const tf_config* cfg, tf_diagnostics** out);
TF_API size_t tf_diagnostics_count(const tf_diagnostics* d);
TF_API const char* tf_diagnostics_message(const tf_diagnostics* d, size_t index);
TF_API void tf_diagnostics_free(tf_diagnostics* d);

/* Runs the enabled pipeline stages in dependency order. Stage caches under
 * the work directory are reused when their content hashes match. */
TF_API tf_status tf_run(const tf_config* cfg);

#ifdef __cplusplus
}
#endif

#endif /* TRAILFORGE_TRAILFORGE_H_ */
