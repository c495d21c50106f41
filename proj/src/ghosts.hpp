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

#ifndef TRAILFORGE_GHOSTS_HPP_
#define TRAILFORGE_GHOSTS_HPP_

#include <string>
#include <vector>

#include "image.hpp"
#include "segment.hpp"

namespace tf {

struct ObjectStats {
  int label = 0;
  long area = 0;
  Rect bbox;
  double compactness = 0.0;  // area / bbox area
  Rgb8 median_color;
  bool surroundings_valid = false;  // false = "too varied" (or no surroundings at all)
  Rgb8 surroundings_color;
  double surroundings_spread = 0.0;
};

struct GhostConfig {
  double proximity_factor = 4.0;  // x the larger bbox diagonal of the pair
  double area_tol = 0.5;
  double comp_tol = 0.25;
  double spread_threshold = 30.0;
  double match_threshold = 30.0;  // "approximates its surroundings" cutoff
  int dilation_radius = 3;
};

// Advisory only: a suspected verdict never alters any mask.
struct GhostVerdict {
  int label = 0;
  bool suspected = false;
  int partner_label = 0;  // 0 when not suspected
  std::string reason;
};

struct SurroundingsStats {
  bool valid = false;
  Rgb8 color;
  double spread = 0.0;
};

// Color of the object's dilation minus all foreground (any object), with its
// RMS spread. Spread above the threshold means "too varied".
SurroundingsStats surroundings_stats(const LabelMap& lm, const RasterImage& frame, int label,
                                     const Rect& bbox, const GhostConfig& cfg);

// Per-object area, bbox, compactness, median color, and the color of the
// surroundings (the object's dilation minus all foreground). Surroundings
// whose RMS color spread exceeds the threshold are marked "too varied".
std::vector<ObjectStats> object_stats(const LabelMap& lm, const RasterImage& frame,
                                      const GhostConfig& cfg);

// An object is suspect when a nearby object has similar area and compactness
// and the object's median color matches its own surroundings better than it
// matches the partner. Objects with too-varied surroundings are never
// flagged.
std::vector<GhostVerdict> flag_ghosts(const std::vector<ObjectStats>& stats,
                                      const GhostConfig& cfg);

}  // namespace tf

#endif  // TRAILFORGE_GHOSTS_HPP_
