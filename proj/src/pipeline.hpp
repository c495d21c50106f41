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

#ifndef TRAILFORGE_PIPELINE_HPP_
#define TRAILFORGE_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace tf {

// 64-bit FNV-1a; good enough for a local content cache.
class Fnv1a {
 public:
  void update(const void* data, size_t len);
  void update(const std::string& s) { update(s.data(), s.size()); }
  void update_file(const std::filesystem::path& path);  // throws io_error
  uint64_t digest() const { return h_; }
  std::string hex() const;

 private:
  uint64_t h_ = 1469598103934665603ull;
};

// Stage cache record; a cache is reused only when both hashes match and the
// output files are present.
struct StageManifest {
  std::string stage;
  std::string input_hash;
  std::string config_hash;
  int frames = 0;
  bool complete = false;

  uint64_t fingerprint() const;
  void write(const std::filesystem::path& path) const;
  static std::optional<StageManifest> read(const std::filesystem::path& path);
};

struct StageReport {
  std::string name;
  bool cached = false;
  double wall_ms = 0.0;
  int frames = 0;
  long decoded_frames = -1;            // background stage only
  std::optional<Offset2D> trace_min;   // deshake stage only
  std::optional<Offset2D> trace_max;
};

struct RunReport {
  int threads = 1;
  std::vector<StageReport> stages;
};

// Executes the enabled stages in dependency order, reusing hash-valid caches,
// and writes work_dir/run.json. Throws config_error, io_error, or
// runtime_error (stage failure) with frame context.
RunReport run_pipeline(const PipelineConfig& cfg);

// {pattern} and {fps} substituted into the operator's encoder template.
std::string expand_encode_template(const std::string& tmpl, const std::string& pattern, int fps);

}  // namespace tf

#endif  // TRAILFORGE_PIPELINE_HPP_
