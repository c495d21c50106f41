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

#include "image.hpp"

#include <algorithm>
#include <cmath>

namespace tf {

GrayImage to_grayscale(const RasterImage& img) {
  GrayImage out(img.width(), img.height());
  const Rgb8* src = img.pixels().data();
  float* dst = out.values().data();
  const long n = img.pixel_count();
  for (long i = 0; i < n; ++i) {
    dst[i] = 0.299f * src[i].r + 0.587f * src[i].g + 0.114f * src[i].b;
  }
  return out;
}

YccPixel rgb_to_ycc(Rgb8 p) {
  const double r = p.r, g = p.g, b = p.b;
  YccPixel out;
  out.y = 0.299 * r + 0.587 * g + 0.114 * b;
  out.cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b;
  out.cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b;
  out.y = std::clamp(out.y, 0.0, 255.0);
  out.cb = std::clamp(out.cb, 0.0, 255.0);
  out.cr = std::clamp(out.cr, 0.0, 255.0);
  return out;
}

double color_distance(const YccPixel& a, const YccPixel& b, double chroma_weight) {
  const double dy = a.y - b.y;
  const double dcb = a.cb - b.cb;
  const double dcr = a.cr - b.cr;
  return std::sqrt(dy * dy + chroma_weight * chroma_weight * (dcb * dcb + dcr * dcr));
}

RasterImage translate_crop(const RasterImage& img, Offset2D offset, const Rect& crop) {
  if (crop.width < 1 || crop.height < 1) throw std::invalid_argument("empty crop");
  const int rx0 = crop.x0 - offset.dx;
  const int ry0 = crop.y0 - offset.dy;
  if (rx0 < 0 || ry0 < 0 || rx0 + crop.width > img.width() || ry0 + crop.height > img.height()) {
    throw std::runtime_error("crop exceeds frame");
  }
  RasterImage out(crop.width, crop.height);
  for (int y = 0; y < crop.height; ++y) {
    const Rgb8* src = img.row(ry0 + y) + rx0;
    std::copy(src, src + crop.width, out.row(y));
  }
  return out;
}

uint8_t round_channel(double v) {
  long r = std::lround(v);
  return static_cast<uint8_t>(std::clamp(r, 0L, 255L));
}

}  // namespace tf
