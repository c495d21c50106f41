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

#include "config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tf {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int r = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (...) {
    throw config_error(key + ": expected integer, got '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (...) {
    throw config_error(key + ": expected number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw config_error(key + ": expected boolean, got '" + v + "'");
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Stage parse_stage(const std::string& name) {
  if (name == "deshake") return Stage::kDeshake;
  if (name == "background") return Stage::kBackground;
  if (name == "segment") return Stage::kSegment;
  if (name == "ghosts") return Stage::kGhosts;
  if (name == "render") return Stage::kRender;
  throw config_error("unknown stage '" + name + "'");
}

}  // namespace

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kDeshake:
      return "deshake";
    case Stage::kBackground:
      return "background";
    case Stage::kSegment:
      return "segment";
    case Stage::kGhosts:
      return "ghosts";
    case Stage::kRender:
      return "render";
  }
  return "?";
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  if (key == "input.dir") {
    input_dir = value;
  } else if (key == "work.dir") {
    work_dir = value;
  } else if (key == "stages") {
    stages.clear();
    for (const auto& s : split(value, ',')) {
      if (s.empty()) continue;
      const Stage st = parse_stage(s);
      if (std::find(stages.begin(), stages.end(), st) == stages.end()) stages.push_back(st);
    }
    std::sort(stages.begin(), stages.end());
  } else if (key == "threads") {
    threads = value == "auto" ? 0 : parse_int(key, value);
  } else if (key == "deshake.max_offset") {
    deshake.max_offset = parse_int(key, value);
  } else if (key == "deshake.block_size") {
    deshake.block_size = parse_int(key, value);
  } else if (key == "deshake.contrast_threshold") {
    deshake.contrast_threshold = parse_double(key, value);
  } else if (key == "deshake.subregion") {
    if (value.empty()) {
      deshake.subregion.reset();
    } else {
      const auto parts = split(value, ',');
      if (parts.size() != 4) throw config_error("deshake.subregion: expected x0,y0,width,height");
      deshake.subregion = Rect{parse_int(key, parts[0]), parse_int(key, parts[1]),
                               parse_int(key, parts[2]), parse_int(key, parts[3])};
    }
  } else if (key == "background.window") {
    window.width = parse_int(key, value);
  } else if (key == "background.alignment") {
    if (value == "centered")
      window.alignment = WindowAlignment::kCentered;
    else if (value == "trailing")
      window.alignment = WindowAlignment::kTrailing;
    else
      throw config_error("background.alignment: expected centered|trailing");
  } else if (key == "segment.color_threshold") {
    segmentation.color_threshold = parse_double(key, value);
  } else if (key == "segment.chroma_weight") {
    segmentation.chroma_weight = parse_double(key, value);
  } else if (key == "segment.disk_schedule") {
    std::vector<DiskStep> schedule;
    if (!value.empty()) {
      for (const auto& entry : split(value, ',')) {
        const auto rv = split(entry, ':');
        if (rv.size() != 2)
          throw config_error("segment.disk_schedule: expected radius:majority pairs");
        schedule.push_back({parse_int(key, rv[0]), parse_double(key, rv[1])});
      }
    }
    segmentation.disk_schedule = std::move(schedule);
  } else if (key == "segment.min_area_fraction") {
    segmentation.min_area_fraction = parse_double(key, value);
  } else if (key == "segment.min_thickness") {
    segmentation.min_thickness = parse_int(key, value);
  } else if (key == "segment.min_aspect") {
    segmentation.min_aspect = parse_double(key, value);
  } else if (key == "segment.near_hole_max_iters") {
    segmentation.near_hole_max_iters = parse_int(key, value);
  } else if (key == "render.pre_frames") {
    render.profile.pre_frames = parse_int(key, value);
  } else if (key == "render.post_frames") {
    render.profile.post_frames = parse_int(key, value);
  } else if (key == "render.curve") {
    if (value == "linear")
      render.profile.curve = FadeCurve::kLinear;
    else if (value == "quadratic")
      render.profile.curve = FadeCurve::kQuadratic;
    else if (value == "cubic")
      render.profile.curve = FadeCurve::kCubic;
    else
      throw config_error("render.curve: expected linear|quadratic|cubic");
  } else if (key == "render.background_style") {
    if (value == "normal")
      render.style = BackgroundStyle::kNormal;
    else if (value == "desaturated")
      render.style = BackgroundStyle::kDesaturated;
    else if (value == "erased")
      render.style = BackgroundStyle::kErased;
    else
      throw config_error("render.background_style: expected normal|desaturated|erased");
  } else if (key == "render.combine") {
    if (value == "heaviest")
      render.combine = CombineMode::kHeaviest;
    else if (value == "rescale")
      render.combine = CombineMode::kRescale;
    else if (value == "accumulate")
      render.combine = CombineMode::kAccumulate;
    else
      throw config_error("render.combine: expected heaviest|rescale|accumulate");
  } else if (key == "render.fps") {
    fps = parse_int(key, value);
  } else if (key == "render.encode") {
    encode = value;
  } else if (key == "ghosts.proximity_factor") {
    ghosts.proximity_factor = parse_double(key, value);
  } else if (key == "ghosts.area_tol") {
    ghosts.area_tol = parse_double(key, value);
  } else if (key == "ghosts.comp_tol") {
    ghosts.comp_tol = parse_double(key, value);
  } else if (key == "ghosts.spread_threshold") {
    ghosts.spread_threshold = parse_double(key, value);
  } else if (key == "ghosts.match_threshold") {
    ghosts.match_threshold = parse_double(key, value);
  } else if (key == "ghosts.dilation_radius") {
    ghosts.dilation_radius = parse_int(key, value);
  } else if (key == "ghosts.overlay") {
    ghost_overlay = parse_bool(key, value);
  } else if (key == "median.tol") {
    median_tol = parse_double(key, value);
  } else if (key == "median.max_iter") {
    median_max_iter = parse_int(key, value);
  } else {
    throw config_error("unknown config key '" + key + "'");
  }
}

std::string PipelineConfig::get(const std::string& key) const {
  if (key == "input.dir") return input_dir;
  if (key == "work.dir") return work_dir;
  if (key == "stages") {
    std::string s;
    for (const auto& st : stages) {
      if (!s.empty()) s += ",";
      s += stage_name(st);
    }
    return s;
  }
  if (key == "threads") return threads == 0 ? "auto" : std::to_string(threads);
  if (key == "deshake.max_offset") return std::to_string(deshake.max_offset);
  if (key == "deshake.block_size") return std::to_string(deshake.block_size);
  if (key == "deshake.contrast_threshold") return fmt_double(deshake.contrast_threshold);
  if (key == "deshake.subregion") {
    if (!deshake.subregion) return "";
    const Rect& r = *deshake.subregion;
    return std::to_string(r.x0) + "," + std::to_string(r.y0) + "," + std::to_string(r.width) +
           "," + std::to_string(r.height);
  }
  if (key == "background.window") return std::to_string(window.width);
  if (key == "background.alignment")
    return window.alignment == WindowAlignment::kTrailing ? "trailing" : "centered";
  if (key == "segment.color_threshold") return fmt_double(segmentation.color_threshold);
  if (key == "segment.chroma_weight") return fmt_double(segmentation.chroma_weight);
  if (key == "segment.disk_schedule") {
    std::string s;
    for (const auto& d : segmentation.disk_schedule) {
      if (!s.empty()) s += ",";
      s += std::to_string(d.radius) + ":" + fmt_double(d.majority);
    }
    return s;
  }
  if (key == "segment.min_area_fraction") return fmt_double(segmentation.min_area_fraction);
  if (key == "segment.min_thickness") return std::to_string(segmentation.min_thickness);
  if (key == "segment.min_aspect") return fmt_double(segmentation.min_aspect);
  if (key == "segment.near_hole_max_iters")
    return std::to_string(segmentation.near_hole_max_iters);
  if (key == "render.pre_frames") return std::to_string(render.profile.pre_frames);
  if (key == "render.post_frames") return std::to_string(render.profile.post_frames);
  if (key == "render.curve") {
    switch (render.profile.curve) {
      case FadeCurve::kLinear:
        return "linear";
      case FadeCurve::kQuadratic:
        return "quadratic";
      case FadeCurve::kCubic:
        return "cubic";
    }
  }
  if (key == "render.background_style") {
    switch (render.style) {
      case BackgroundStyle::kNormal:
        return "normal";
      case BackgroundStyle::kDesaturated:
        return "desaturated";
      case BackgroundStyle::kErased:
        return "erased";
    }
  }
  if (key == "render.combine") {
    switch (render.combine) {
      case CombineMode::kHeaviest:
        return "heaviest";
      case CombineMode::kRescale:
        return "rescale";
      case CombineMode::kAccumulate:
        return "accumulate";
    }
  }
  if (key == "render.fps") return std::to_string(fps);
  if (key == "render.encode") return encode;
  if (key == "ghosts.proximity_factor") return fmt_double(ghosts.proximity_factor);
  if (key == "ghosts.area_tol") return fmt_double(ghosts.area_tol);
  if (key == "ghosts.comp_tol") return fmt_double(ghosts.comp_tol);
  if (key == "ghosts.spread_threshold") return fmt_double(ghosts.spread_threshold);
  if (key == "ghosts.match_threshold") return fmt_double(ghosts.match_threshold);
  if (key == "ghosts.dilation_radius") return std::to_string(ghosts.dilation_radius);
  if (key == "ghosts.overlay") return ghost_overlay ? "true" : "false";
  if (key == "median.tol") return fmt_double(median_tol);
  if (key == "median.max_iter") return std::to_string(median_max_iter);
  throw config_error("unknown config key '" + key + "'");
}

std::vector<std::string> PipelineConfig::known_keys() {
  return {"input.dir",
          "work.dir",
          "stages",
          "threads",
          "deshake.max_offset",
          "deshake.block_size",
          "deshake.contrast_threshold",
          "deshake.subregion",
          "background.window",
          "background.alignment",
          "segment.color_threshold",
          "segment.chroma_weight",
          "segment.disk_schedule",
          "segment.min_area_fraction",
          "segment.min_thickness",
          "segment.min_aspect",
          "segment.near_hole_max_iters",
          "render.pre_frames",
          "render.post_frames",
          "render.curve",
          "render.background_style",
          "render.combine",
          "render.fps",
          "render.encode",
          "ghosts.proximity_factor",
          "ghosts.area_tol",
          "ghosts.comp_tol",
          "ghosts.spread_threshold",
          "ghosts.match_threshold",
          "ghosts.dilation_radius",
          "ghosts.overlay",
          "median.tol",
          "median.max_iter"};
}

bool PipelineConfig::stage_enabled(Stage s) const {
  return std::find(stages.begin(), stages.end(), s) != stages.end();
}

std::vector<std::string> PipelineConfig::validate() const {
  std::vector<std::string> diags;
  if (input_dir.empty()) diags.push_back("input.dir is not set");
  if (work_dir.empty()) diags.push_back("work.dir is not set");
  if (stages.empty()) diags.push_back("stages: nothing to run");
  if (threads < 0) diags.push_back("threads must be >= 0");

  if (deshake.max_offset < 1) diags.push_back("deshake.max_offset must be >= 1");
  if (deshake.block_size < 3 * deshake.max_offset)
    diags.push_back("deshake.block_size must be at least 3x deshake.max_offset "
                    "(blocks a few times larger than the largest expected offset)");
  if (deshake.contrast_threshold < 0) diags.push_back("deshake.contrast_threshold must be >= 0");
  if (deshake.subregion) {
    const Rect& r = *deshake.subregion;
    if (r.x0 < 0 || r.y0 < 0 || r.width < 1 || r.height < 1)
      diags.push_back("deshake.subregion must have non-negative origin and positive size");
  }

  if (window.width < 1) diags.push_back("background.window must be >= 1");

  if (segmentation.color_threshold <= 0) diags.push_back("segment.color_threshold must be > 0");
  if (segmentation.chroma_weight < 1) diags.push_back("segment.chroma_weight must be >= 1");
  for (size_t i = 0; i < segmentation.disk_schedule.size(); ++i) {
    const DiskStep& d = segmentation.disk_schedule[i];
    if (d.radius < 1) diags.push_back("segment.disk_schedule radii must be >= 1");
    if (d.majority <= 0 || d.majority >= 1)
      diags.push_back("segment.disk_schedule majority fractions must be in (0,1)");
    if (i > 0 && d.radius <= segmentation.disk_schedule[i - 1].radius)
      diags.push_back("segment.disk_schedule radii must be strictly increasing");
  }
  if (segmentation.min_area_fraction <= 0)
    diags.push_back("segment.min_area_fraction must be > 0");
  if (segmentation.min_thickness < 1) diags.push_back("segment.min_thickness must be >= 1");
  if (segmentation.min_aspect < 1) diags.push_back("segment.min_aspect must be >= 1");
  if (segmentation.near_hole_max_iters < 0)
    diags.push_back("segment.near_hole_max_iters must be >= 0");

  if (render.profile.pre_frames < 0 || render.profile.post_frames < 0)
    diags.push_back("render fade lengths must be >= 0");
  if (render.profile.pre_frames + render.profile.post_frames < 1)
    diags.push_back("render.pre_frames + render.post_frames must be >= 1");
  if (fps < 1) diags.push_back("render.fps must be >= 1");

  if (ghosts.proximity_factor <= 0) diags.push_back("ghosts.proximity_factor must be > 0");
  if (ghosts.area_tol < 0 || ghosts.area_tol > 1)
    diags.push_back("ghosts.area_tol must be in [0,1]");
  if (ghosts.comp_tol < 0 || ghosts.comp_tol > 1)
    diags.push_back("ghosts.comp_tol must be in [0,1]");
  if (ghosts.spread_threshold < 0) diags.push_back("ghosts.spread_threshold must be >= 0");
  if (ghosts.match_threshold < 0) diags.push_back("ghosts.match_threshold must be >= 0");
  if (ghosts.dilation_radius < 1) diags.push_back("ghosts.dilation_radius must be >= 1");

  if (median_tol <= 0) diags.push_back("median.tol must be > 0");
  if (median_max_iter < 1) diags.push_back("median.max_iter must be >= 1");

  // Stage dependencies: every enabled stage needs its inputs from an enabled
  // earlier stage or an existing cache; only the hard config-level cycle-free
  // ordering is checked here.
  if (stage_enabled(Stage::kSegment) && !stage_enabled(Stage::kBackground) &&
      work_dir.empty())
    diags.push_back("segment requires background outputs (enable the stage or provide a cache)");
  return diags;
}

std::string PipelineConfig::canonical_stage_text(Stage s) const {
  std::vector<std::string> keys;
  switch (s) {
    case Stage::kDeshake:
      keys = {"deshake.max_offset", "deshake.block_size", "deshake.contrast_threshold",
              "deshake.subregion", "median.tol", "median.max_iter"};
      break;
    case Stage::kBackground:
      keys = {"background.window", "background.alignment", "median.tol", "median.max_iter"};
      break;
    case Stage::kSegment:
      keys = {"segment.color_threshold", "segment.chroma_weight", "segment.disk_schedule",
              "segment.min_area_fraction", "segment.min_thickness", "segment.min_aspect",
              "segment.near_hole_max_iters"};
      break;
    case Stage::kGhosts:
      keys = {"ghosts.proximity_factor", "ghosts.area_tol", "ghosts.comp_tol",
              "ghosts.spread_threshold", "ghosts.match_threshold", "ghosts.dilation_radius",
              "ghosts.overlay"};
      break;
    case Stage::kRender:
      keys = {"render.pre_frames", "render.post_frames", "render.curve",
              "render.background_style", "render.combine"};
      break;
  }
  std::string text;
  for (const auto& k : keys) text += k + "=" + get(k) + "\n";
  return text;
}

void apply_config_line(PipelineConfig& cfg, const std::string& line, int lineno) {
  std::string s = line;
  const auto hash = s.find('#');
  if (hash != std::string::npos) s = s.substr(0, hash);
  s = trim(s);
  if (s.empty()) return;
  const auto eq = s.find('=');
  if (eq == std::string::npos)
    throw config_error("line " + std::to_string(lineno) + ": expected key = value");
  cfg.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path.string());
  PipelineConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    apply_config_line(cfg, line, lineno);
  }
  return cfg;
}

}  // namespace tf
