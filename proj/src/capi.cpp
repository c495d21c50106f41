// Copyright 2026 The Trailforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trailforge/trailforge.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "config.hpp"
#include "image_io.hpp"
#include "pipeline.hpp"

struct tf_config {
  tf::PipelineConfig cfg;
};

struct tf_diagnostics {
  std::vector<std::string> messages;
};

namespace {

thread_local std::string g_last_error;

tf_status set_error(tf_status status, const char* what) {
  g_last_error = what ? what : "unknown error";
  return status;
}

template <typename Fn>
tf_status guarded(Fn&& fn) {
  try {
    fn();
    return TF_OK;
  } catch (const tf::config_error& e) {
    return set_error(TF_ERROR_CONFIG, e.what());
  } catch (const tf::io_error& e) {
    return set_error(TF_ERROR_IO, e.what());
  } catch (const std::exception& e) {
    return set_error(TF_ERROR_STAGE, e.what());
  } catch (...) {
    return set_error(TF_ERROR_STAGE, "unknown failure");
  }
}

}  // namespace

extern "C" {

const char* tf_version(void) { return "0.1.0"; }

const char* tf_last_error(void) { return g_last_error.c_str(); }

tf_config* tf_config_new(void) { return new tf_config(); }

void tf_config_free(tf_config* cfg) { delete cfg; }

tf_status tf_config_load_file(tf_config* cfg, const char* path) {
  if (!cfg || !path) return set_error(TF_ERROR_ARGUMENT, "null argument");
  return guarded([&] { cfg->cfg = tf::load_config_file(path); });
}

tf_status tf_config_set(tf_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return set_error(TF_ERROR_ARGUMENT, "null argument");
  return guarded([&] { cfg->cfg.set(key, value); });
}

tf_status tf_config_get(const tf_config* cfg, const char* key, char* buf, size_t buf_size) {
  if (!cfg || !key || !buf || buf_size == 0) return set_error(TF_ERROR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string v = cfg->cfg.get(key);
    const size_t n = std::min(buf_size - 1, v.size());
    std::memcpy(buf, v.data(), n);
    buf[n] = '\0';
  });
}

tf_status tf_validate(const tf_config* cfg, tf_diagnostics** out) {
  if (!cfg || !out) return set_error(TF_ERROR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto d = std::make_unique<tf_diagnostics>();
    d->messages = cfg->cfg.validate();
    *out = d.release();
  });
}

size_t tf_diagnostics_count(const tf_diagnostics* d) { return d ? d->messages.size() : 0; }

const char* tf_diagnostics_message(const tf_diagnostics* d, size_t index) {
  if (!d || index >= d->messages.size()) return nullptr;
  return d->messages[index].c_str();
}

void tf_diagnostics_free(tf_diagnostics* d) { delete d; }

tf_status tf_run(const tf_config* cfg) {
  if (!cfg) return set_error(TF_ERROR_ARGUMENT, "null argument");
  return guarded([&] { tf::run_pipeline(cfg->cfg); });
}

}  // extern "C"
