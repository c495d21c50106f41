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

#ifndef TRAILFORGE_IMAGE_HPP_
#define TRAILFORGE_IMAGE_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tf {

struct Rgb8 {
  uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb8&) const = default;
};

// Luma and chroma in 0..255, chroma centered at 128. Fractional values kept.
struct YccPixel {
  double y = 0.0, cb = 128.0, cr = 128.0;
};

struct Rect {
  int x0 = 0, y0 = 0, width = 0, height = 0;

  int x1() const { return x0 + width; }   // exclusive
  int y1() const { return y0 + height; }  // exclusive
  bool contains(int x, int y) const {
    return x >= x0 && x < x1() && y >= y0 && y < y1();
  }
  bool operator==(const Rect&) const = default;
};

// Signed per-frame translation in whole pixels.
struct Offset2D {
  int dx = 0, dy = 0;
  Offset2D operator-() const { return {-dx, -dy}; }
  Offset2D operator+(Offset2D o) const { return {dx + o.dx, dy + o.dy}; }
  bool operator==(const Offset2D&) const = default;
};

// W x H grid of RGB triples, row-major.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, Rgb8 fill = {})
      : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be >= 1");
    pixels_.assign(static_cast<size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  long pixel_count() const { return static_cast<long>(width_) * height_; }

  Rgb8& at(int x, int y) { return pixels_[static_cast<size_t>(y) * width_ + x]; }
  const Rgb8& at(int x, int y) const { return pixels_[static_cast<size_t>(y) * width_ + x]; }
  Rgb8* row(int y) { return pixels_.data() + static_cast<size_t>(y) * width_; }
  const Rgb8* row(int y) const { return pixels_.data() + static_cast<size_t>(y) * width_; }

  std::vector<Rgb8>& pixels() { return pixels_; }
  const std::vector<Rgb8>& pixels() const { return pixels_; }

  Rect bounds() const { return {0, 0, width_, height_}; }
  bool same_size(const RasterImage& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }
  bool operator==(const RasterImage&) const = default;

 private:
  int width_ = 0, height_ = 0;
  std::vector<Rgb8> pixels_;
};

// Single-channel luma plane; fractional values permitted.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, float fill = 0.f)
      : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be >= 1");
    values_.assign(static_cast<size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }

  float& at(int x, int y) { return values_[static_cast<size_t>(y) * width_ + x]; }
  float at(int x, int y) const { return values_[static_cast<size_t>(y) * width_ + x]; }
  float* row(int y) { return values_.data() + static_cast<size_t>(y) * width_; }
  const float* row(int y) const { return values_.data() + static_cast<size_t>(y) * width_; }

  std::vector<float>& values() { return values_; }
  const std::vector<float>& values() const { return values_; }

 private:
  int width_ = 0, height_ = 0;
  std::vector<float> values_;
};

// Rec. 601 luma from an RGB triple.
inline double luma(Rgb8 p) { return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b; }

GrayImage to_grayscale(const RasterImage& img);

// Rec. 601 full-range transform, each component clamped to [0, 255].
YccPixel rgb_to_ycc(Rgb8 p);

// sqrt(dy^2 + w^2 (dcb^2 + dcr^2)); chroma overweighted for w > 1.
double color_distance(const YccPixel& a, const YccPixel& b, double chroma_weight);

// Output pixel (x, y) samples input (crop.x0 + x - offset.dx, crop.y0 + y - offset.dy),
// so content moves by +offset. Throws "crop exceeds frame" if any read is out of bounds.
RasterImage translate_crop(const RasterImage& img, Offset2D offset, const Rect& crop);

// Nearest integer, halves away from zero, clamped to 0..255.
uint8_t round_channel(double v);

}  // namespace tf

#endif  // TRAILFORGE_IMAGE_HPP_
