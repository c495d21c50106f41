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

// Command-line front end; all pipeline work goes through the shared
// library's C interface.

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "trailforge/trailforge.h"

namespace {

struct ConfigDeleter {
  void operator()(tf_config* c) const { tf_config_free(c); }
};
using ConfigPtr = std::unique_ptr<tf_config, ConfigDeleter>;

struct CommonArgs {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string stages;
  std::string threads;
};

int fail(tf_status status) {
  std::fprintf(stderr, "trailforge: %s\n", tf_last_error());
  return status == TF_ERROR_ARGUMENT ? TF_ERROR_CONFIG : static_cast<int>(status);
}

// Builds the config with precedence: defaults < file < --set/--flags.
int build_config(const CommonArgs& args, ConfigPtr& out) {
  ConfigPtr cfg(tf_config_new());
  if (!args.config_file.empty()) {
    if (tf_status s = tf_config_load_file(cfg.get(), args.config_file.c_str()); s != TF_OK)
      return fail(s);
  }
  for (const std::string& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "trailforge: --set expects key=value, got '%s'\n", kv.c_str());
      return TF_ERROR_CONFIG;
    }
    if (tf_status s = tf_config_set(cfg.get(), kv.substr(0, eq).c_str(),
                                    kv.substr(eq + 1).c_str());
        s != TF_OK)
      return fail(s);
  }
  if (!args.stages.empty()) {
    if (tf_status s = tf_config_set(cfg.get(), "stages", args.stages.c_str()); s != TF_OK)
      return fail(s);
  }
  if (!args.threads.empty()) {
    if (tf_status s = tf_config_set(cfg.get(), "threads", args.threads.c_str()); s != TF_OK)
      return fail(s);
  }
  out = std::move(cfg);
  return 0;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_file, "configuration file (key = value lines)");
  cmd->add_option("--set", args.overrides, "override a config key (key=value, repeatable)");
  cmd->add_option("--stages", args.stages, "comma-separated stage subset to run");
  cmd->add_option("--threads", args.threads, "worker count or 'auto'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motion-trail renderer for stationary-camera image sequences"};
  app.set_version_flag("--version", std::string(tf_version()));
  app.require_subcommand(1);

  CommonArgs run_args;
  std::string encode;
  bool ghost_overlay = false;
  CLI::App* run = app.add_subcommand("run", "run the pipeline");
  add_common(run, run_args);
  run->add_option("--encode", encode,
                  "external encoder command; {pattern} and {fps} are substituted");
  run->add_flag("--ghost-overlay", ghost_overlay, "emit annotated ghost overlay frames");

  CommonArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "check a configuration");
  add_common(validate, validate_args);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    ConfigPtr cfg;
    if (int rc = build_config(run_args, cfg); rc != 0) return rc;
    if (!encode.empty()) {
      if (tf_status s = tf_config_set(cfg.get(), "render.encode", encode.c_str()); s != TF_OK)
        return fail(s);
    }
    if (ghost_overlay) {
      if (tf_status s = tf_config_set(cfg.get(), "ghosts.overlay", "true"); s != TF_OK)
        return fail(s);
    }
    if (tf_status s = tf_run(cfg.get()); s != TF_OK) return fail(s);
    return 0;
  }

  // validate
  ConfigPtr cfg;
  if (int rc = build_config(validate_args, cfg); rc != 0) return rc;
  tf_diagnostics* diags = nullptr;
  if (tf_status s = tf_validate(cfg.get(), &diags); s != TF_OK) return fail(s);
  const size_t n = tf_diagnostics_count(diags);
  for (size_t i = 0; i < n; ++i)
    std::fprintf(stderr, "config: %s\n", tf_diagnostics_message(diags, i));
  tf_diagnostics_free(diags);
  if (n == 0) {
    std::printf("configuration OK\n");
    return 0;
  }
  return TF_ERROR_CONFIG;
}
