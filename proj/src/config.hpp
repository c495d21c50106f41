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

#ifndef TRAILFORGE_CONFIG_HPP_
#define TRAILFORGE_CONFIG_HPP_

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "background.hpp"
#include "deshake.hpp"
#include "ghosts.hpp"
#include "median.hpp"
#include "segment.hpp"
#include "trails.hpp"

namespace tf {

class config_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Stage { kDeshake, kBackground, kSegment, kGhosts, kRender };

const char* stage_name(Stage s);

// Everything the operator can tune, with defaults. Flat key-value surface:
// file lines and --set overrides both go through set().
struct PipelineConfig {
  std::string input_dir;
  std::string work_dir;
  std::vector<Stage> stages = {Stage::kDeshake, Stage::kBackground, Stage::kSegment,
                               Stage::kGhosts, Stage::kRender};
  int threads = 0;  // 0 = auto

  DeshakeConfig deshake;
  WindowSpec window;
  SegmentationConfig segmentation;
  RenderConfig render;
  GhostConfig ghosts;
  bool ghost_overlay = false;
  double median_tol = kMedianTol;
  int median_max_iter = kMedianMaxIter;
  int fps = 30;
  std::string encode;  // external encoder command template; {pattern} and {fps} substituted

  // Throws config_error on unknown key or unparsable value.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  static std::vector<std::string> known_keys();

  // Human-readable invariant violations; empty means runnable.
  std::vector<std::string> validate() const;

  // Stable text of the keys that affect a stage's output, for cache hashing.
  std::string canonical_stage_text(Stage s) const;

  bool stage_enabled(Stage s) const;
};

// key = value lines, '#' comments. Throws config_error with line numbers.
PipelineConfig load_config_file(const std::filesystem::path& path);
void apply_config_line(PipelineConfig& cfg, const std::string& line, int lineno);

}  // namespace tf

#endif  // TRAILFORGE_CONFIG_HPP_
