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

#ifndef TRAILFORGE_SEGMENT_HPP_
#define TRAILFORGE_SEGMENT_HPP_

#include <cstdint>
#include <vector>

#include "image.hpp"

namespace tf {

// Per-pixel foreground classification, row-major, one byte per bit.
class BitMask {
 public:
  BitMask() = default;
  BitMask(int width, int height, bool fill = false)
      : width_(width), height_(height),
        bits_(static_cast<size_t>(width) * height, fill ? 1 : 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  long count() const { return static_cast<long>(width_) * height_; }

  bool get(int x, int y) const { return bits_[static_cast<size_t>(y) * width_ + x] != 0; }
  void set(int x, int y, bool v) { bits_[static_cast<size_t>(y) * width_ + x] = v ? 1 : 0; }
  bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

  std::vector<uint8_t>& bits() { return bits_; }
  const std::vector<uint8_t>& bits() const { return bits_; }
  long popcount() const;

  bool operator==(const BitMask&) const = default;

 private:
  int width_ = 0, height_ = 0;
  std::vector<uint8_t> bits_;
};

// Connected components of a mask; 0 = background, labels 1..count assigned
// in raster first-touch order, 8-connected foreground.
struct LabelMap {
  int width = 0, height = 0;
  std::vector<int32_t> labels;
  int count = 0;

  int32_t at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }
};

struct DiskStep {
  int radius = 2;
  double majority = 0.5;
};

struct SegmentationConfig {
  double color_threshold = 18.0;
  double chroma_weight = 2.0;
  std::vector<DiskStep> disk_schedule = {{2, 0.5}, {3, 0.5}, {5, 0.5}};
  double min_area_fraction = 1e-4;
  int min_thickness = 2;
  double min_aspect = 25.0;
  int near_hole_max_iters = 4;
};

// Foreground where the weighted-YCbCr distance between frame and background
// exceeds the threshold.
BitMask raw_mask(const RasterImage& frame, const RasterImage& bg, const SegmentationConfig& cfg);

// One simultaneous pass: a pixel classified oppositely from all of its
// in-bounds 4-neighbors is flipped.
BitMask remove_pinholes(const BitMask& m);

// Majority vote over the pixel-centered Euclidean disk (center included,
// in-bounds subset at borders): foreground iff fraction > majority.
BitMask disk_smooth(const BitMask& m, int radius, double majority);

BitMask smooth_schedule(const BitMask& m, const std::vector<DiskStep>& schedule);

LabelMap label_components(const BitMask& m);

// Components with area < min_area_fraction * frame_area become background.
BitMask cull_small(const LabelMap& lm, long frame_area, double min_area_fraction);

// Components whose bounding box is thinner than min_thickness, or whose
// aspect ratio exceeds min_aspect, become background.
BitMask cull_thin(const LabelMap& lm, int min_thickness, double min_aspect);

// Background regions (4-connected) within bbox that do not touch its border
// become foreground.
BitMask fill_holes(const BitMask& m, const Rect& bbox);

// fill_holes applied per connected object.
BitMask fill_holes_all(const BitMask& m);

// Dilate-fill-smooth iteration sealing bays into lakes; see the config's
// near_hole_max_iters and disk_schedule (smoothing radius keeps growing from
// the schedule's last entry). Ends with one more hole removal.
BitMask fill_near_holes(const BitMask& m, const SegmentationConfig& cfg);

// The whole refinement chain in order: raw mask, pinholes, disk schedule,
// small cull, thin cull, hole fill, near-hole fill.
BitMask segment_frame(const RasterImage& frame, const RasterImage& bg,
                      const SegmentationConfig& cfg);

// 8-connected dilation by one step.
BitMask dilate8(const BitMask& m);

struct ComponentInfo {
  int label = 0;
  long area = 0;
  Rect bbox;
};

std::vector<ComponentInfo> component_info(const LabelMap& lm);

}  // namespace tf

#endif  // TRAILFORGE_SEGMENT_HPP_
