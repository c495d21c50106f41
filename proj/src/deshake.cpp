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

#include "deshake.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "median.hpp"
#include "threading.hpp"

namespace tf {
namespace {

void check_block(const GrayImage& img, const Rect& block) {
  if (block.width < 1 || block.height < 1 || block.x0 < 0 || block.y0 < 0 ||
      block.x1() > img.width() || block.y1() > img.height()) {
    throw std::invalid_argument("block outside image");
  }
}

int round_half_away(double v) {
  return static_cast<int>(v >= 0 ? std::floor(v + 0.5) : std::ceil(v - 0.5));
}

}  // namespace

double block_contrast(const GrayImage& img, const Rect& block) {
  check_block(img, block);
  const long n = static_cast<long>(block.width) * block.height;
  double sum = 0.0;
  for (int y = block.y0; y < block.y1(); ++y) {
    const float* row = img.row(y);
    for (int x = block.x0; x < block.x1(); ++x) sum += row[x];
  }
  const double mean = sum / n;
  double var = 0.0;
  for (int y = block.y0; y < block.y1(); ++y) {
    const float* row = img.row(y);
    for (int x = block.x0; x < block.x1(); ++x) {
      const double d = row[x] - mean;
      var += d * d;
    }
  }
  return std::sqrt(var / n);
}

std::pair<Offset2D, double> best_block_offset(const GrayImage& ref, const GrayImage& tgt,
                                              const Rect& block, int max_offset) {
  check_block(ref, block);
  if (max_offset < 1) throw std::invalid_argument("max_offset must be >= 1");
  if (block.x0 - max_offset < 0 || block.y0 - max_offset < 0 ||
      block.x1() + max_offset > tgt.width() || block.y1() + max_offset > tgt.height()) {
    throw std::runtime_error("block not searchable");
  }

  const long area = static_cast<long>(block.width) * block.height;
  Offset2D best{0, 0};
  double best_sse = std::numeric_limits<double>::infinity();
  auto tie_key = [](Offset2D o) {
    return std::array<int, 3>{std::abs(o.dx) + std::abs(o.dy), o.dy, o.dx};
  };
  for (int dy = -max_offset; dy <= max_offset; ++dy) {
    for (int dx = -max_offset; dx <= max_offset; ++dx) {
      double sse = 0.0;
      for (int y = block.y0; y < block.y1(); ++y) {
        const float* r = ref.row(y) + block.x0;
        const float* t = tgt.row(y + dy) + block.x0 + dx;
        float acc = 0.f;
        for (int x = 0; x < block.width; ++x) {
          const float d = r[x] - t[x];
          acc += d * d;
        }
        sse += acc;
      }
      const Offset2D cand{dx, dy};
      if (sse < best_sse || (sse == best_sse && tie_key(cand) < tie_key(best))) {
        best_sse = sse;
        best = cand;
      }
    }
  }
  return {best, std::sqrt(best_sse / area)};
}

std::vector<BlockMeasurement> measure_blocks(const GrayImage& ref, const GrayImage& tgt,
                                             const DeshakeConfig& cfg) {
  if (ref.width() != tgt.width() || ref.height() != tgt.height())
    throw std::invalid_argument("frame dimensions differ");
  if (cfg.block_size < 3 * cfg.max_offset)
    throw std::invalid_argument("block_size must be at least 3x max_offset");

  Rect region = cfg.subregion.value_or(Rect{0, 0, ref.width(), ref.height()});
  if (region.x0 < 0 || region.y0 < 0 || region.x1() > ref.width() ||
      region.y1() > ref.height() || region.width < 1 || region.height < 1) {
    throw std::invalid_argument("subregion outside frame");
  }

  const int bs = cfg.block_size;
  const int m = cfg.max_offset;
  std::vector<BlockMeasurement> out;
  for (int by = region.y0; by + bs <= region.y1(); by += bs) {
    for (int bx = region.x0; bx + bs <= region.x1(); bx += bs) {
      // Keep only blocks whose full search window stays inside the frame.
      if (bx - m < 0 || by - m < 0 || bx + bs + m > ref.width() || by + bs + m > ref.height())
        continue;
      BlockMeasurement bm;
      bm.block = {bx, by, bs, bs};
      bm.contrast = block_contrast(ref, bm.block);
      bm.accepted = bm.contrast >= cfg.contrast_threshold;
      out.push_back(bm);
    }
  }
  for (auto& bm : out) {
    if (!bm.accepted) continue;
    auto [offset, rms] = best_block_offset(ref, tgt, bm.block, m);
    bm.offset = offset;
    bm.rms = rms;
  }
  return out;
}

Offset2D frame_offset(const GrayImage& ref, const GrayImage& tgt, const DeshakeConfig& cfg) {
  const auto blocks = measure_blocks(ref, tgt, cfg);
  std::vector<Point<2>> offsets;
  offsets.reserve(blocks.size());
  for (const auto& bm : blocks) {
    if (bm.accepted)
      offsets.push_back({static_cast<double>(bm.offset.dx), static_cast<double>(bm.offset.dy)});
  }
  if (offsets.empty()) throw std::runtime_error("no usable blocks");
  const Point<2> med = geometric_median<2>(offsets);
  return {round_half_away(med[0]), round_half_away(med[1])};
}

OffsetTrace accumulate(const std::vector<Offset2D>& steps) {
  OffsetTrace trace;
  trace.reserve(steps.size() + 1);
  trace.push_back({0, 0});
  for (const auto& s : steps) trace.push_back(trace.back() + s);
  return trace;
}

Rect common_crop(const OffsetTrace& offsets, int frame_width, int frame_height) {
  if (offsets.empty()) throw std::invalid_argument("empty trace");
  int max_dx = 0, min_dx = 0, max_dy = 0, min_dy = 0;
  for (const auto& o : offsets) {
    max_dx = std::max(max_dx, o.dx);
    min_dx = std::min(min_dx, o.dx);
    max_dy = std::max(max_dy, o.dy);
    min_dy = std::min(min_dy, o.dy);
  }
  Rect r;
  r.x0 = max_dx;
  r.y0 = max_dy;
  r.width = frame_width - max_dx + min_dx;
  r.height = frame_height - max_dy + min_dy;
  if (r.width < 1 || r.height < 1) throw std::runtime_error("camera motion exceeds frame");
  return r;
}

StabilizeResult stabilize(const std::vector<RasterImage>& frames, const DeshakeConfig& cfg,
                          int threads) {
  if (frames.empty()) throw std::invalid_argument("no frames");
  for (size_t i = 1; i < frames.size(); ++i) {
    if (!frames[i].same_size(frames[0]))
      throw std::runtime_error("frame " + std::to_string(i) + ": dimensions differ");
  }

  std::vector<GrayImage> grays(frames.size());
  parallel_for(static_cast<long>(frames.size()), threads,
               [&](long i) { grays[i] = to_grayscale(frames[i]); });

  std::vector<Offset2D> steps(frames.size() - 1);
  parallel_for(static_cast<long>(steps.size()), threads, [&](long i) {
    try {
      steps[i] = frame_offset(grays[i], grays[i + 1], cfg);
    } catch (const std::exception& e) {
      throw std::runtime_error("frame pair (" + std::to_string(i) + "," +
                               std::to_string(i + 1) + "): " + e.what());
    }
  });

  StabilizeResult result;
  result.trace = accumulate(steps);

  // The trace measures content displacement; applying the negated offsets
  // realigns every frame with frame 0.
  OffsetTrace corrections;
  corrections.reserve(result.trace.size());
  for (const auto& o : result.trace) corrections.push_back(-o);

  result.crop = common_crop(corrections, frames[0].width(), frames[0].height());
  result.frames.resize(frames.size());
  parallel_for(static_cast<long>(frames.size()), threads, [&](long i) {
    result.frames[i] = translate_crop(frames[i], corrections[i], result.crop);
  });
  return result;
}

}  // namespace tf
