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

#include "trails.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "window_stream.hpp"

namespace tf {
namespace {

double curve_pow(double base, FadeCurve curve) {
  switch (curve) {
    case FadeCurve::kLinear:
      return base;
    case FadeCurve::kQuadratic:
      return base * base;
    case FadeCurve::kCubic:
      return base * base * base;
  }
  return base;
}

Rgb8 blend(Rgb8 fg, Rgb8 bg, double w) {
  return {round_channel(w * fg.r + (1.0 - w) * bg.r),
          round_channel(w * fg.g + (1.0 - w) * bg.g),
          round_channel(w * fg.b + (1.0 - w) * bg.b)};
}

// Prefer heavier, then temporally nearer, then more recent.
bool better_candidate(const OverlayCandidate& a, const OverlayCandidate& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  if (std::abs(a.dt) != std::abs(b.dt)) return std::abs(a.dt) < std::abs(b.dt);
  return a.source_frame > b.source_frame;
}

}  // namespace

double fade_weight(const FadeProfile& profile, int dt) {
  if (dt == 0) return 1.0;
  if (dt > 0) {
    if (dt > profile.post_frames) return 0.0;
    return curve_pow(1.0 - static_cast<double>(dt) / (profile.post_frames + 1), profile.curve);
  }
  if (-dt > profile.pre_frames) return 0.0;
  return curve_pow(1.0 + static_cast<double>(dt) / (profile.pre_frames + 1), profile.curve);
}

Rgb8 composite_pixel(Rgb8 bg, std::span<const OverlayCandidate> candidates, CombineMode mode) {
  if (candidates.empty()) return bg;

  if (mode == CombineMode::kHeaviest) {
    const OverlayCandidate* best = &candidates[0];
    for (const auto& c : candidates.subspan(1))
      if (better_candidate(c, *best)) best = &c;
    return blend(best->color, bg, std::clamp(best->weight, 0.0, 1.0));
  }

  std::vector<OverlayCandidate> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end(), better_candidate);

  double r = 0, g = 0, b = 0;
  if (mode == CombineMode::kRescale) {
    // Weights rescaled to sum to the heaviest one.
    double wsum = 0;
    for (const auto& c : sorted) wsum += c.weight;
    if (wsum <= 0) return bg;
    const double heaviest = sorted[0].weight;
    const double scale = heaviest / wsum;
    for (const auto& c : sorted) {
      const double w = c.weight * scale;
      r += w * c.color.r;
      g += w * c.color.g;
      b += w * c.color.b;
    }
    r += (1.0 - heaviest) * bg.r;
    g += (1.0 - heaviest) * bg.g;
    b += (1.0 - heaviest) * bg.b;
  } else {  // kAccumulate: heaviest first until unity, remainder to background
    double acc = 0;
    for (const auto& c : sorted) {
      const double take = std::min(c.weight, 1.0 - acc);
      if (take <= 0) break;
      acc += take;
      r += take * c.color.r;
      g += take * c.color.g;
      b += take * c.color.b;
    }
    r += (1.0 - acc) * bg.r;
    g += (1.0 - acc) * bg.g;
    b += (1.0 - acc) * bg.b;
  }
  return {round_channel(r), round_channel(g), round_channel(b)};
}

RasterImage restyle_background(const RasterImage& bg, BackgroundStyle style) {
  switch (style) {
    case BackgroundStyle::kNormal:
      return bg;
    case BackgroundStyle::kDesaturated: {
      RasterImage out(bg.width(), bg.height());
      const Rgb8* src = bg.pixels().data();
      Rgb8* dst = out.pixels().data();
      for (long i = 0; i < bg.pixel_count(); ++i) {
        const uint8_t l = round_channel(luma(src[i]));
        dst[i] = {l, l, l};
      }
      return out;
    }
    case BackgroundStyle::kErased:
      return RasterImage(bg.width(), bg.height(), {128, 128, 128});
  }
  return bg;
}

namespace {

// Composites output n from the window items; window[i] corresponds to source
// frame first + i.
RasterImage render_one(int n, int first, std::span<const RenderItem* const> window,
                       const RenderConfig& cfg) {
  const RenderItem& self = *window[n - first];
  RasterImage out = restyle_background(self.background, cfg.style);
  const int w = out.width(), h = out.height();
  std::vector<OverlayCandidate> cands;
  cands.reserve(window.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      cands.clear();
      for (size_t i = 0; i < window.size(); ++i) {
        const RenderItem& item = *window[i];
        if (!item.mask.get(x, y)) continue;
        const int m = first + static_cast<int>(i);
        const double weight = fade_weight(cfg.profile, n - m);
        if (weight <= 0.0) continue;
        cands.push_back({m, n - m, item.frame.at(x, y), weight});
      }
      if (!cands.empty()) out.at(x, y) = composite_pixel(out.at(x, y), cands, cfg.combine);
    }
  }
  return out;
}

std::pair<int, int> render_window(int n, int count, const FadeProfile& p) {
  const int first = std::max(0, n - p.post_frames);
  const int last = std::min(count - 1, n + p.pre_frames);
  return {first, last};
}

}  // namespace

std::vector<RasterImage> render_sequence(const std::vector<RasterImage>& frames,
                                         const std::vector<RasterImage>& backgrounds,
                                         const std::vector<BitMask>& masks,
                                         const RenderConfig& cfg, int threads) {
  if (frames.size() != backgrounds.size() || frames.size() != masks.size())
    throw std::runtime_error("stream lengths differ");
  std::vector<RasterImage> out(frames.size());
  render_stream(
      static_cast<int>(frames.size()), cfg, threads,
      [&](int i) {
        if (!frames[i].same_size(backgrounds[i]) || frames[i].width() != masks[i].width() ||
            frames[i].height() != masks[i].height())
          throw std::runtime_error("frame " + std::to_string(i) + ": dimensions differ");
        return RenderItem{frames[i], backgrounds[i], masks[i]};
      },
      [&](int n, const RasterImage& img) { out[n] = img; });
  return out;
}

void render_stream(int frame_count, const RenderConfig& cfg, int threads,
                   const std::function<RenderItem(int)>& loader,
                   const std::function<void(int, const RasterImage&)>& sink) {
  if (frame_count <= 0) throw std::invalid_argument("empty sequence");
  if (cfg.profile.pre_frames < 0 || cfg.profile.post_frames < 0 ||
      cfg.profile.pre_frames + cfg.profile.post_frames < 1)
    throw std::invalid_argument("fade profile needs pre + post >= 1");

  run_window_stream<RenderItem>(
      frame_count, frame_count, threads,
      [&](int n) { return render_window(n, frame_count, cfg.profile); },
      loader,
      [&](int n, std::span<const std::shared_ptr<const RenderItem>> window) {
        const int first = render_window(n, frame_count, cfg.profile).first;
        std::vector<const RenderItem*> items;
        items.reserve(window.size());
        for (const auto& p : window) items.push_back(p.get());
        sink(n, render_one(n, first, items, cfg));
      },
      cfg.profile.pre_frames + cfg.profile.post_frames + 1 + std::max(1, threads));
}

}  // namespace tf
