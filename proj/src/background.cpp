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

#include "background.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "median.hpp"
#include "window_stream.hpp"

namespace tf {
namespace {

Rgb8 round_rgb(Float3 v) {
  return {round_channel(v.x), round_channel(v.y), round_channel(v.z)};
}

}  // namespace

Rgb8 pixel_background(std::span<const Rgb8> samples) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::vector<float> xs(samples.size()), ys(samples.size()), zs(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    xs[i] = samples[i].r;
    ys[i] = samples[i].g;
    zs[i] = samples[i].b;
  }
  return round_rgb(weiszfeld_rgb(xs.data(), ys.data(), zs.data(),
                                 static_cast<int>(samples.size())));
}

BackgroundRunStats sliding_background_stream(
    int frame_count, const WindowSpec& spec, int threads,
    const std::function<RasterImage(int)>& loader,
    const std::function<void(int, const RasterImage&)>& sink) {
  if (frame_count <= 0) throw std::invalid_argument("empty sequence");
  if (spec.width < 1 || spec.width > frame_count)
    throw std::invalid_argument("window width must be in [1, frame count]");

  auto stats = run_window_stream<RasterImage>(
      frame_count, frame_count, threads,
      [&](int n) { return spec.bounds(n, frame_count); },
      loader,
      [&](int n, std::span<const std::shared_ptr<const RasterImage>> window) {
        const RasterImage& first = *window[0];
        for (const auto& f : window) {
          if (!f->same_size(first)) throw std::runtime_error("frame dimensions differ");
        }
        const int k = static_cast<int>(window.size());
        const long pixels = first.pixel_count();
        RasterImage bg(first.width(), first.height());

        std::vector<const Rgb8*> planes(k);
        for (int i = 0; i < k; ++i) planes[i] = window[i]->pixels().data();
        Rgb8* out = bg.pixels().data();

        std::vector<float> xs(k), ys(k), zs(k);
        for (long p = 0; p < pixels; ++p) {
          const Rgb8 head = planes[0][p];
          bool constant = true;
          for (int i = 0; i < k; ++i) {
            const Rgb8 s = planes[i][p];
            constant &= s == head;
            xs[i] = s.r;
            ys[i] = s.g;
            zs[i] = s.b;
          }
          out[p] =
              constant ? head : round_rgb(weiszfeld_rgb(xs.data(), ys.data(), zs.data(), k));
        }
        sink(n, bg);
      },
      spec.width + std::max(1, threads));

  return {stats.loads, stats.peak_resident};
}

std::vector<RasterImage> sliding_background(const std::vector<RasterImage>& frames,
                                            const WindowSpec& spec, int threads) {
  std::vector<RasterImage> out(frames.size());
  sliding_background_stream(
      static_cast<int>(frames.size()), spec, threads,
      [&](int i) { return frames[i]; },
      [&](int n, const RasterImage& bg) { out[n] = bg; });
  return out;
}

}  // namespace tf
