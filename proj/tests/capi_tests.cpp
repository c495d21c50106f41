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

// Exercises the shared library strictly through its public C header, the
// same surface the CLI uses.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "trailforge/trailforge.h"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path p =
      fs::temp_directory_path() / ("trailforge_capi_" + tag + "_" + std::to_string(counter++));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Minimal binary PPM writer so this binary needs nothing but the C API.
void write_ppm_frame(const fs::path& path, int w, int h, int seed, bool sprite) {
  std::ofstream out(path, std::ios::binary);
  out << "P6\n" << w << " " << h << "\n255\n";
  unsigned state = 12345u + seed * 0;  // same plate for every frame
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      state = state * 1664525u + 1013904223u;
      unsigned char rgb[3] = {static_cast<unsigned char>(64 + (state >> 8) % 128),
                              static_cast<unsigned char>(64 + (state >> 16) % 128),
                              static_cast<unsigned char>(64 + (state >> 24) % 64)};
      if (sprite && x >= 10 && x < 16 && y >= 10 && y < 16) {
        rgb[0] = 250;
        rgb[1] = 250;
        rgb[2] = 250;
      }
      out.write(reinterpret_cast<const char*>(rgb), 3);
    }
}

}  // namespace

TEST_CASE("version and error strings exist") {
  CHECK(tf_version() != nullptr);
  CHECK(std::strlen(tf_version()) > 0);
  CHECK(tf_last_error() != nullptr);
}

TEST_CASE("config set, get, and unknown keys") {
  tf_config* cfg = tf_config_new();
  REQUIRE(cfg != nullptr);
  CHECK(tf_config_set(cfg, "background.window", "31") == TF_OK);
  char buf[64];
  CHECK(tf_config_get(cfg, "background.window", buf, sizeof buf) == TF_OK);
  CHECK(std::string(buf) == "31");

  CHECK(tf_config_set(cfg, "bogus.key", "1") == TF_ERROR_CONFIG);
  CHECK(std::string(tf_last_error()).find("bogus.key") != std::string::npos);
  CHECK(tf_config_set(cfg, nullptr, "1") == TF_ERROR_ARGUMENT);
  tf_config_free(cfg);
}

TEST_CASE("validate reports diagnostics through the handle") {
  tf_config* cfg = tf_config_new();
  tf_diagnostics* diags = nullptr;
  REQUIRE(tf_validate(cfg, &diags) == TF_OK);
  CHECK(tf_diagnostics_count(diags) >= 2);  // input and work dirs unset
  CHECK(tf_diagnostics_message(diags, 0) != nullptr);
  CHECK(tf_diagnostics_message(diags, 9999) == nullptr);
  tf_diagnostics_free(diags);

  CHECK(tf_config_set(cfg, "input.dir", "/tmp/in") == TF_OK);
  CHECK(tf_config_set(cfg, "work.dir", "/tmp/out") == TF_OK);
  REQUIRE(tf_validate(cfg, &diags) == TF_OK);
  CHECK(tf_diagnostics_count(diags) == 0);
  tf_diagnostics_free(diags);
  tf_config_free(cfg);
}

TEST_CASE("config file loading reports line errors") {
  const fs::path dir = fresh_dir("conf");
  std::ofstream(dir / "ok.conf") << "background.window = 9\n";
  std::ofstream(dir / "bad.conf") << "background.window = nine\n";

  tf_config* cfg = tf_config_new();
  CHECK(tf_config_load_file(cfg, (dir / "ok.conf").string().c_str()) == TF_OK);
  CHECK(tf_config_load_file(cfg, (dir / "bad.conf").string().c_str()) == TF_ERROR_CONFIG);
  CHECK(tf_config_load_file(cfg, (dir / "missing.conf").string().c_str()) == TF_ERROR_CONFIG);
  tf_config_free(cfg);
  fs::remove_all(dir);
}

TEST_CASE("tf_run executes the pipeline end to end") {
  const fs::path input = fresh_dir("run_in");
  const fs::path work = fresh_dir("run_work");
  const int n = 10;
  for (int i = 0; i < n; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06d.ppm", i);
    write_ppm_frame(input / name, 64, 48, i, i >= 4 && i <= 6);
  }

  tf_config* cfg = tf_config_new();
  CHECK(tf_config_set(cfg, "input.dir", input.string().c_str()) == TF_OK);
  CHECK(tf_config_set(cfg, "work.dir", work.string().c_str()) == TF_OK);
  CHECK(tf_config_set(cfg, "stages", "background,segment,ghosts,render") == TF_OK);
  CHECK(tf_config_set(cfg, "background.window", "5") == TF_OK);
  CHECK(tf_config_set(cfg, "render.post_frames", "3") == TF_OK);
  CHECK(tf_config_set(cfg, "threads", "2") == TF_OK);

  REQUIRE(tf_run(cfg) == TF_OK);
  CHECK(fs::exists(work / "run.json"));
  CHECK(fs::exists(work / "out" / "frame_000009.png"));
  CHECK(fs::exists(work / "bg" / "manifest.txt"));

  tf_config_free(cfg);
  fs::remove_all(input);
  fs::remove_all(work);
}

TEST_CASE("tf_run classifies failures") {
  tf_config* cfg = tf_config_new();
  // Unset dirs: configuration error.
  CHECK(tf_run(cfg) == TF_ERROR_CONFIG);

  // Empty input directory: I/O error.
  const fs::path input = fresh_dir("err_in");
  const fs::path work = fresh_dir("err_work");
  CHECK(tf_config_set(cfg, "input.dir", input.string().c_str()) == TF_OK);
  CHECK(tf_config_set(cfg, "work.dir", work.string().c_str()) == TF_OK);
  CHECK(tf_run(cfg) == TF_ERROR_IO);
  CHECK(std::strlen(tf_last_error()) > 0);

  // A stage failure: window wider than the sequence.
  for (int i = 0; i < 3; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06d.ppm", i);
    write_ppm_frame(input / name, 32, 24, i, false);
  }
  CHECK(tf_config_set(cfg, "stages", "background") == TF_OK);
  CHECK(tf_config_set(cfg, "background.window", "50") == TF_OK);
  CHECK(tf_run(cfg) == TF_ERROR_STAGE);

  tf_config_free(cfg);
  fs::remove_all(input);
  fs::remove_all(work);
}
