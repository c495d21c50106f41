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

#ifndef TRAILFORGE_DESHAKE_HPP_
#define TRAILFORGE_DESHAKE_HPP_

#include <optional>
#include <vector>

#include "image.hpp"

namespace tf {

struct BlockMeasurement {
  Rect block;
  Offset2D offset;
  double rms = 0.0;
  double contrast = 0.0;
  bool accepted = false;
};

struct DeshakeConfig {
  int max_offset = 8;
  int block_size = 32;  // must be >= 3 * max_offset
  double contrast_threshold = 4.0;
  std::optional<Rect> subregion;  // analysis restricted to a declared-static region
};

// Cumulative per-frame offsets; entry 0 is (0,0).
using OffsetTrace = std::vector<Offset2D>;

// Population standard deviation of luma within the block.
double block_contrast(const GrayImage& img, const Rect& block);

// Exhaustive search over all |dx|,|dy| <= max_offset. Candidate (dx,dy)
// compares ref's block in place against tgt sampled at (+dx,+dy), so the
// result is the displacement of tgt's content relative to ref. Ties break on
// smallest |dx|+|dy|, then dy, then dx.
std::pair<Offset2D, double> best_block_offset(const GrayImage& ref, const GrayImage& tgt,
                                              const Rect& block, int max_offset);

// Per-block measurements over the tiled analysis region (low-contrast blocks
// rejected, not searched).
std::vector<BlockMeasurement> measure_blocks(const GrayImage& ref, const GrayImage& tgt,
                                             const DeshakeConfig& cfg);

// Geometric median of accepted block offsets, rounded to integers.
// Throws "no usable blocks" when everything fails the contrast gate.
Offset2D frame_offset(const GrayImage& ref, const GrayImage& tgt, const DeshakeConfig& cfg);

// Prefix sums with a leading (0,0).
OffsetTrace accumulate(const std::vector<Offset2D>& steps);

// Largest rectangle valid for translate_crop under every per-frame offset:
// x0 = max(0, max dx), right margin = max(0, -min dx), same for y.
// Throws "camera motion exceeds frame" if the result is empty.
Rect common_crop(const OffsetTrace& offsets, int frame_width, int frame_height);

struct StabilizeResult {
  std::vector<RasterImage> frames;
  OffsetTrace trace;  // accumulated measured steps
  Rect crop;
};

// Full pipeline: pairwise frame offsets, accumulation, common crop, and
// per-frame translate_crop. Static scene content is pixel-aligned across the
// outputs. threads parallelizes the per-pair block searches.
StabilizeResult stabilize(const std::vector<RasterImage>& frames, const DeshakeConfig& cfg,
                          int threads = 1);

}  // namespace tf

#endif  // TRAILFORGE_DESHAKE_HPP_
