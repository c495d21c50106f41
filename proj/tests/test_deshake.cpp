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

#include "deshake.hpp"
#include "testutil.hpp"

using namespace tf;

namespace {

DeshakeConfig small_cfg() {
  DeshakeConfig cfg;
  cfg.max_offset = 5;
  cfg.block_size = 16;
  cfg.contrast_threshold = 4.0;
  return cfg;
}

}  // namespace

TEST_CASE("block contrast of a constant block is zero") {
  const GrayImage g(32, 32, 77.f);
  CHECK(block_contrast(g, {4, 4, 16, 16}) == 0.0);
}

TEST_CASE("block contrast of an alternating block is 127.5") {
  GrayImage g(16, 16);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) g.at(x, y) = ((x + y) % 2) ? 255.f : 0.f;
  CHECK(block_contrast(g, {0, 0, 16, 16}) == doctest::Approx(127.5));
}

TEST_CASE("block contrast matches the direct-formula oracle") {
  const RasterImage img = tftest::noise_image(40, 40, 77);
  const GrayImage g = to_grayscale(img);
  const Rect block{3, 5, 20, 17};
  std::vector<double> vals;
  for (int y = block.y0; y < block.y1(); ++y)
    for (int x = block.x0; x < block.x1(); ++x) vals.push_back(g.at(x, y));
  CHECK(block_contrast(g, block) == doctest::Approx(tftest::stddev_oracle(vals)).epsilon(1e-9));
}

TEST_CASE("best offset of identical frames is zero with zero rms") {
  const GrayImage g = to_grayscale(tftest::noise_image(48, 48, 3));
  const auto [off, rms] = best_block_offset(g, g, {8, 8, 32, 32}, 5);
  CHECK(off == Offset2D{0, 0});
  CHECK(rms == 0.0);
}

TEST_CASE("best offset recovers a synthetic shift exactly") {
  // tgt content displaced by (3,-2) relative to ref.
  const RasterImage master = tftest::noise_image(80, 80, 12);
  const RasterImage ref = tftest::crop_of(master, 10, 10, 60, 60);
  const RasterImage tgt = tftest::crop_of(master, 10 - 3, 10 + 2, 60, 60);
  const auto [off, rms] = best_block_offset(to_grayscale(ref), to_grayscale(tgt),
                                            {16, 16, 24, 24}, 5);
  CHECK(off == Offset2D{3, -2});
  CHECK(rms == 0.0);
}

TEST_CASE("textureless frames tie-break to zero") {
  const GrayImage g(48, 48, 128.f);
  const auto [off, rms] = best_block_offset(g, g, {8, 8, 32, 32}, 5);
  CHECK(off == Offset2D{0, 0});
  CHECK(rms == 0.0);
}

TEST_CASE("block too close to the border is not searchable") {
  const GrayImage g(48, 48, 128.f);
  CHECK_THROWS_WITH(best_block_offset(g, g, {0, 0, 32, 32}, 5), "block not searchable");
}

TEST_CASE("frame offset recovers a global shift") {
  const RasterImage master = tftest::noise_image(160, 140, 8);
  const RasterImage ref = tftest::crop_of(master, 10, 10, 128, 112);
  const RasterImage tgt = tftest::crop_of(master, 10 - 2, 10 - 1, 128, 112);
  CHECK(frame_offset(to_grayscale(ref), to_grayscale(tgt), small_cfg()) == Offset2D{2, 1});
}

TEST_CASE("identical frames give zero offset") {
  const GrayImage g = to_grayscale(tftest::noise_image(96, 96, 5));
  CHECK(frame_offset(g, g, small_cfg()) == Offset2D{0, 0});
}

TEST_CASE("a moving sprite does not corrupt the frame offset") {
  const RasterImage master = tftest::noise_image(200, 160, 21);
  RasterImage ref = tftest::crop_of(master, 10, 10, 160, 128);
  RasterImage tgt = tftest::crop_of(master, 10 - 2, 10 - 1, 160, 128);
  // One block region overwritten by a sprite with its own apparent motion.
  tftest::draw_rect(ref, {20, 20, 16, 16}, {200, 30, 30});
  tftest::draw_rect(tgt, {12, 20, 16, 16}, {200, 30, 30});
  CHECK(frame_offset(to_grayscale(ref), to_grayscale(tgt), small_cfg()) == Offset2D{2, 1});

  // The sprite offsets alone would vote differently; the median of the
  // combined multiset still lands on the true shift (grid-search check).
  std::vector<Point<2>> votes(20, Point<2>{2, 1});
  votes.push_back({-8, 0});
  const auto med = tftest::grid_median<2>(votes);
  CHECK(med[0] == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(med[1] == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("antisymmetry on synthetic shifts") {
  const RasterImage master = tftest::noise_image(160, 160, 31);
  const RasterImage a = tftest::crop_of(master, 12, 12, 120, 120);
  for (const Offset2D v : {Offset2D{3, -2}, Offset2D{-4, 4}, Offset2D{0, 5}}) {
    const RasterImage b = tftest::crop_of(master, 12 - v.dx, 12 - v.dy, 120, 120);
    const GrayImage ga = to_grayscale(a), gb = to_grayscale(b);
    CHECK(frame_offset(ga, gb, small_cfg()) == v);
    CHECK(frame_offset(gb, ga, small_cfg()) == -v);
  }
}

TEST_CASE("contrast gating ignores constant regions") {
  RasterImage master = tftest::noise_image(200, 160, 13);
  // A large flat area (sky) spanning several blocks.
  tftest::draw_rect(master, {0, 0, 200, 60}, {180, 200, 230});
  const RasterImage ref = tftest::crop_of(master, 10, 10, 160, 128);
  const RasterImage tgt = tftest::crop_of(master, 10 - 2, 10 - 1, 160, 128);
  const GrayImage gr = to_grayscale(ref), gt = to_grayscale(tgt);
  CHECK(frame_offset(gr, gt, small_cfg()) == Offset2D{2, 1});
  const auto blocks = measure_blocks(gr, gt, small_cfg());
  int rejected = 0;
  for (const auto& b : blocks) rejected += !b.accepted;
  CHECK(rejected > 0);
}

TEST_CASE("no usable blocks is an error") {
  const GrayImage flat(64, 64, 10.f);
  CHECK_THROWS_WITH(frame_offset(flat, flat, small_cfg()), "no usable blocks");
}

TEST_CASE("accumulate forms prefix sums with a leading zero") {
  CHECK(accumulate({}) == OffsetTrace{{0, 0}});
  const OffsetTrace t = accumulate({{1, 0}, {1, 0}, {-1, 2}});
  CHECK(t == OffsetTrace{{0, 0}, {1, 0}, {2, 0}, {1, 2}});
}

TEST_CASE("accumulate round-trips first differences") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-6, 6);
  std::vector<Offset2D> steps;
  for (int i = 0; i < 40; ++i) steps.push_back({d(rng), d(rng)});
  const OffsetTrace t = accumulate(steps);
  REQUIRE(t.size() == steps.size() + 1);
  for (size_t i = 0; i < steps.size(); ++i) {
    CHECK(t[i + 1].dx - t[i].dx == steps[i].dx);
    CHECK(t[i + 1].dy - t[i].dy == steps[i].dy);
  }
}

TEST_CASE("common crop matches the example and the interval oracle") {
  const OffsetTrace t = {{0, 0}, {-5, 0}, {3, 2}, {-2, 1}};
  const Rect r = common_crop(t, 100, 80);
  CHECK(r == Rect{3, 2, 92, 78});
  CHECK(r == tftest::crop_oracle(t, 100, 80));

  CHECK(common_crop({{0, 0}}, 100, 80) == Rect{0, 0, 100, 80});

  std::mt19937 rng(29);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    OffsetTrace trace{{0, 0}};
    for (int i = 0; i < 10; ++i) trace.push_back({d(rng), d(rng)});
    CHECK(common_crop(trace, 64, 48) == tftest::crop_oracle(trace, 64, 48));
  }
}

TEST_CASE("crop wider than the frame is an error") {
  CHECK_THROWS_WITH(common_crop({{0, 0}, {-40, 0}, {40, 0}}, 64, 64),
                    "camera motion exceeds frame");
}

TEST_CASE("a single frame stabilizes to itself") {
  const std::vector<RasterImage> frames{tftest::noise_image(64, 48, 2)};
  const auto result = stabilize(frames, small_cfg());
  REQUIRE(result.trace.size() == 1);
  CHECK(result.trace[0] == Offset2D{0, 0});
  CHECK(result.frames[0] == frames[0]);
}

TEST_CASE("stabilize leaves an already-stable sequence untouched") {
  std::vector<RasterImage> frames(5, tftest::noise_image(96, 80, 41));
  const auto result = stabilize(frames, small_cfg());
  CHECK(result.crop == Rect{0, 0, 96, 80});
  for (const auto& f : result.frames) CHECK(f == frames[0]);
  for (const auto& o : result.trace) CHECK(o == Offset2D{0, 0});
}

TEST_CASE("stabilize recovers a random offset walk exactly") {
  const int w = 128, h = 96, pad = 40, n = 12;
  const RasterImage master = tftest::noise_image(w + 2 * pad, h + 2 * pad, 55);
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> step(-5, 5);
  std::vector<Offset2D> walk{{0, 0}};
  for (int i = 1; i < n; ++i) {
    Offset2D next{walk.back().dx + step(rng), walk.back().dy + step(rng)};
    next.dx = std::clamp(next.dx, -pad, pad);
    next.dy = std::clamp(next.dy, -pad, pad);
    walk.push_back(next);
  }
  const auto frames = tftest::shifted_sequence(master, walk, pad, pad, w, h);
  const auto result = stabilize(frames, small_cfg(), 2);

  REQUIRE(result.trace.size() == walk.size());
  for (size_t i = 0; i < walk.size(); ++i) {
    CHECK(result.trace[i].dx == -walk[i].dx);
    CHECK(result.trace[i].dy == -walk[i].dy);
  }

  // Every stabilized frame is bit-identical to the same master crop.
  const RasterImage expected =
      tftest::crop_of(master, pad + result.crop.x0, pad + result.crop.y0, result.crop.width,
                      result.crop.height);
  for (const auto& f : result.frames) CHECK(f == expected);

  // Residual shake between sampled stabilized pairs is zero.
  const GrayImage g0 = to_grayscale(result.frames[0]);
  const GrayImage gk = to_grayscale(result.frames[n - 1]);
  const auto [off, rms] = best_block_offset(g0, gk, {32, 32, 24, 24}, 5);
  CHECK(off == Offset2D{0, 0});
  CHECK(rms == 0.0);
}

TEST_CASE("subregion override follows the declared static strip") {
  // Moving cloud texture fills most of the frame; a static strip sits at the
  // bottom. Without the override the clouds win; with it the strip does.
  const int w = 160, h = 120, n = 4;
  const RasterImage clouds = tftest::noise_image(w + 40, h, 61);
  const RasterImage ground = tftest::noise_image(w, 40, 62);
  std::vector<RasterImage> frames;
  for (int i = 0; i < n; ++i) {
    RasterImage f = tftest::crop_of(clouds, 4 * i, 0, w, h);  // clouds drift 4 px/frame
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < w; ++x) f.at(x, h - 32 + y) = ground.at(x, y);
    frames.push_back(std::move(f));
  }

  DeshakeConfig cfg = small_cfg();
  DeshakeConfig strip = cfg;
  strip.subregion = Rect{0, h - 32, w, 32};

  const GrayImage a = to_grayscale(frames[0]), b = to_grayscale(frames[1]);
  CHECK(frame_offset(a, b, cfg) == Offset2D{-4, 0});   // fooled by the clouds
  CHECK(frame_offset(a, b, strip) == Offset2D{0, 0});  // strip knows better

  const auto result = stabilize(frames, strip);
  for (const auto& o : result.trace) CHECK(o == Offset2D{0, 0});
}
