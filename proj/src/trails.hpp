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

#ifndef TRAILFORGE_TRAILS_HPP_
#define TRAILFORGE_TRAILS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "image.hpp"
#include "segment.hpp"

namespace tf {

enum class FadeCurve { kLinear = 1, kQuadratic = 2, kCubic = 3 };

// Weight 1 at the source frame, decaying to zero over post_frames into the
// future outputs (the trail) and pre_frames into the past (the fade-in).
struct FadeProfile {
  int pre_frames = 0;
  int post_frames = 12;
  FadeCurve curve = FadeCurve::kLinear;
};

enum class BackgroundStyle { kNormal, kDesaturated, kErased };
enum class CombineMode { kHeaviest, kRescale, kAccumulate };

struct RenderConfig {
  FadeProfile profile;
  BackgroundStyle style = BackgroundStyle::kNormal;
  CombineMode combine = CombineMode::kHeaviest;
};

struct OverlayCandidate {
  int source_frame = 0;
  int dt = 0;  // output frame - source frame
  Rgb8 color;
  double weight = 0.0;
};

// dt = output frame - source frame. dt = 0 gives 1; within the fade-out,
// (1 - dt/(post+1))^k; mirrored with pre on the fade-in side; 0 outside.
double fade_weight(const FadeProfile& profile, int dt);

// Heaviest-candidate rule by default: the winner's weight blends with the
// background, other candidates are ignored. Rescale and accumulate implement
// the alternative combination rules.
Rgb8 composite_pixel(Rgb8 bg, std::span<const OverlayCandidate> candidates,
                     CombineMode mode = CombineMode::kHeaviest);

RasterImage restyle_background(const RasterImage& bg, BackgroundStyle style);

// Output n composites, over its restyled background, every foreground pixel
// from source frames within the fade window.
std::vector<RasterImage> render_sequence(const std::vector<RasterImage>& frames,
                                         const std::vector<RasterImage>& backgrounds,
                                         const std::vector<BitMask>& masks,
                                         const RenderConfig& cfg, int threads = 1);

// Streaming form used by the pipeline; loader(i) supplies (frame, background,
// mask) for index i exactly once.
struct RenderItem {
  RasterImage frame;
  RasterImage background;
  BitMask mask;
};

void render_stream(int frame_count, const RenderConfig& cfg, int threads,
                   const std::function<RenderItem(int)>& loader,
                   const std::function<void(int, const RasterImage&)>& sink);

}  // namespace tf

#endif  // TRAILFORGE_TRAILS_HPP_
