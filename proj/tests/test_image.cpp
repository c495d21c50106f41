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

#include <doctest.h>

#include <random>

#include "image.hpp"
#include "testutil.hpp"

using namespace tf;

TEST_CASE("grayscale endpoints") {
  const GrayImage black = to_grayscale(RasterImage(4, 3, {0, 0, 0}));
  for (float v : black.values()) CHECK(v == 0.f);
  const GrayImage white = to_grayscale(RasterImage(4, 3, {255, 255, 255}));
  for (float v : white.values()) CHECK(v == doctest::Approx(255.f));
}

TEST_CASE("grayscale red weight") {
  RasterImage red(1, 1, {255, 0, 0});
  CHECK(to_grayscale(red).at(0, 0) == doctest::Approx(76.245).epsilon(1e-4));
}

TEST_CASE("ycc neutral chroma for black and white") {
  const YccPixel k = rgb_to_ycc({0, 0, 0});
  CHECK(k.y == 0.0);
  CHECK(k.cb == 128.0);
  CHECK(k.cr == 128.0);
  const YccPixel w = rgb_to_ycc({255, 255, 255});
  CHECK(w.y == doctest::Approx(255.0));
  CHECK(w.cb == doctest::Approx(128.0));
  CHECK(w.cr == doctest::Approx(128.0));
}

TEST_CASE("ycc pure red") {
  const YccPixel r = rgb_to_ycc({255, 0, 0});
  CHECK(r.y == doctest::Approx(76.245).epsilon(1e-4));
  CHECK(r.cb == doctest::Approx(84.972).epsilon(1e-4));
  CHECK(r.cr == doctest::Approx(255.0));  // 255.5 clamps to range
}

TEST_CASE("color distance examples") {
  const YccPixel a{100, 128, 128};
  CHECK(color_distance(a, a, 2.0) == 0.0);
  CHECK(color_distance({103, 50, 60}, {100, 50, 60}, 7.0) == doctest::Approx(3.0));
  CHECK(color_distance({90, 132, 131}, {90, 128, 128}, 2.0) == doctest::Approx(10.0));
}

TEST_CASE("color distance is a scaled metric") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(0, 255);
  for (int i = 0; i < 100; ++i) {
    const YccPixel a = rgb_to_ycc({(uint8_t)c(rng), (uint8_t)c(rng), (uint8_t)c(rng)});
    const YccPixel b = rgb_to_ycc({(uint8_t)c(rng), (uint8_t)c(rng), (uint8_t)c(rng)});
    const YccPixel d = rgb_to_ycc({(uint8_t)c(rng), (uint8_t)c(rng), (uint8_t)c(rng)});
    const double w = 1.0 + (i % 5);
    CHECK(color_distance(a, b, w) == doctest::Approx(color_distance(b, a, w)));
    CHECK(color_distance(a, b, w) + color_distance(b, d, w) >=
          color_distance(a, d, w) - 1e-9);
  }
}

TEST_CASE("translate_crop identity") {
  const RasterImage img = tftest::noise_image(8, 6, 42);
  const RasterImage out = translate_crop(img, {0, 0}, img.bounds());
  CHECK(out == img);
}

TEST_CASE("translate_crop index arithmetic on a numbered pattern") {
  RasterImage img(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) img.at(x, y) = {static_cast<uint8_t>(y * 4 + x), 0, 0};
  const RasterImage out = translate_crop(img, {1, 0}, {1, 0, 2, 2});
  // Output (x,y) samples input (1 + x - 1, y) = (x, y): columns 0-1.
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) CHECK(out.at(x, y).r == y * 4 + x);
}

TEST_CASE("translate_crop out of bounds") {
  const RasterImage img = tftest::noise_image(8, 6, 1);
  CHECK_THROWS_WITH(translate_crop(img, {5, 0}, {0, 0, 8, 6}), "crop exceeds frame");
}

TEST_CASE("translate_crop round trip restores the subimage") {
  const RasterImage img = tftest::noise_image(20, 15, 9);
  const Rect crop{4, 3, 10, 8};
  const Offset2D off{2, -1};
  const RasterImage shifted = translate_crop(img, off, crop);
  CHECK(shifted == translate_crop(img, {0, 0},
                                  {crop.x0 - off.dx, crop.y0 - off.dy, crop.width, crop.height}));
  // Inverse offset with an interior crop lands back on original pixels.
  const RasterImage inner = translate_crop(shifted, -off, {2, 2, 5, 4});
  CHECK(inner == translate_crop(img, {0, 0}, {6, 5, 5, 4}));
}

TEST_CASE("round_channel halves away from zero and clamps") {
  CHECK(round_channel(0.5) == 1);
  CHECK(round_channel(1.5) == 2);
  CHECK(round_channel(-3.0) == 0);
  CHECK(round_channel(300.0) == 255);
  CHECK(round_channel(191.25) == 191);
}
