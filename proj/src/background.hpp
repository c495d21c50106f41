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

#ifndef TRAILFORGE_BACKGROUND_HPP_
#define TRAILFORGE_BACKGROUND_HPP_

#include <functional>
#include <span>
#include <vector>

#include "image.hpp"

namespace tf {

enum class WindowAlignment {
  kCentered,  // window centered on the target frame
  kTrailing,  // past-only window ending at the target frame
};

// Temporal averaging window. Centered windows take the extra neighbor of an
// even width on the trailing side; windows truncate at the ends of the
// sequence. Trailing alignment reproduces streaming-style estimation, where
// a departed object lingers in the background for about half a window.
struct WindowSpec {
  int width = 51;
  WindowAlignment alignment = WindowAlignment::kCentered;

  // Inclusive [first, last] for output n in a sequence of count frames.
  std::pair<int, int> bounds(int n, int count) const {
    int before, after;
    if (alignment == WindowAlignment::kTrailing) {
      before = width - 1;
      after = 0;
    } else {
      before = (width - 1) / 2;
      after = width - 1 - before;
    }
    const int first = n - before > 0 ? n - before : 0;
    const int last = n + after < count - 1 ? n + after : count - 1;
    return {first, last};
  }
};

// Geometric median of the samples in RGB space, rounded per channel.
Rgb8 pixel_background(std::span<const Rgb8> samples);

struct BackgroundRunStats {
  long decoded_frames = 0;  // loader invocations; parse-once means == frame count
  int peak_resident = 0;    // decoded frames held simultaneously
};

// Streams the sequence once, emitting one background per frame. loader(i)
// decodes frame i (called exactly once per frame); sink(n, bg) receives
// output n, possibly from a worker thread, at most once per n.
BackgroundRunStats sliding_background_stream(
    int frame_count, const WindowSpec& spec, int threads,
    const std::function<RasterImage(int)>& loader,
    const std::function<void(int, const RasterImage&)>& sink);

// In-memory convenience wrapper.
std::vector<RasterImage> sliding_background(const std::vector<RasterImage>& frames,
                                            const WindowSpec& spec, int threads = 1);

}  // namespace tf

#endif  // TRAILFORGE_BACKGROUND_HPP_
