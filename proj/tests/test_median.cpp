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

#include <algorithm>
#include <random>

#include "median.hpp"
#include "testutil.hpp"

using tf::Point;
using tf::geometric_median;

namespace {

double dist2d(const Point<2>& a, const Point<2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

TEST_CASE("single point returns itself") {
  std::vector<Point<2>> pts = {{3.5, -2.25}};
  const auto m = geometric_median<2>(pts);
  CHECK(m[0] == 3.5);
  CHECK(m[1] == -2.25);
}

TEST_CASE("empty input throws") {
  std::vector<Point<2>> pts;
  CHECK_THROWS_WITH(geometric_median<2>(pts), "no points");
}

TEST_CASE("triangle median matches the grid-search oracle") {
  // Grid search over [0,2]x[0,5] puts the optimum at (1, 1/sqrt(3)).
  std::vector<Point<2>> pts = {{0, 0}, {2, 0}, {1, 5}};
  const auto oracle = tftest::grid_median<2>(pts);
  CHECK(oracle[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(oracle[1] == doctest::Approx(0.5774).epsilon(1e-3));
  const auto m = geometric_median<2>(pts, 1e-4, 1000);
  CHECK(dist2d(m, oracle) < 1e-2);
}

TEST_CASE("outlier rejection: heavy cluster wins") {
  std::vector<Point<2>> pts(9, Point<2>{0, 0});
  pts.push_back({100, 100});
  const auto m = geometric_median<2>(pts);
  CHECK(dist2d(m, {0, 0}) < tf::kMedianTol + 1e-12);
  // The arithmetic mean would sit at (10,10).
}

TEST_CASE("N copies of one point return it exactly") {
  std::vector<Point<3>> pts(17, Point<3>{12.0, 200.0, 55.0});
  const auto m = geometric_median<3>(pts);
  CHECK(m[0] == 12.0);
  CHECK(m[1] == 200.0);
  CHECK(m[2] == 55.0);
}

TEST_CASE("translation equivariance within 2 tol") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point<2>> pts;
    const int n = 3 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    const Point<2> v{coord(rng), coord(rng)};
    auto shifted = pts;
    for (auto& p : shifted) {
      p[0] += v[0];
      p[1] += v[1];
    }
    const auto a = geometric_median<2>(pts);
    const auto b = geometric_median<2>(shifted);
    CHECK(dist2d({a[0] + v[0], a[1] + v[1]}, b) < 2 * tf::kMedianTol);
  }
}

TEST_CASE("odd collinear sets match the coordinate median") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> xs;
    for (int i = 0; i < 7; ++i) xs.push_back(coord(rng));
    std::vector<Point<2>> pts;
    for (double x : xs) pts.push_back({x, 0.0});
    std::nth_element(xs.begin(), xs.begin() + 3, xs.end());
    // Collinear data converges slowly, so iterate at a finer tolerance and
    // check against the coarser default one.
    const auto m = geometric_median<2>(pts, 1e-3, 5000);
    CHECK(std::abs(m[0] - xs[3]) < tf::kMedianTol);
    CHECK(std::abs(m[1]) < tf::kMedianTol);
  }
}

TEST_CASE("result stays inside the bounding box of the inputs") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point<3>> pts;
    const int n = 2 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
    Point<3> lo = pts[0], hi = pts[0];
    for (const auto& p : pts)
      for (size_t d = 0; d < 3; ++d) {
        lo[d] = std::min(lo[d], p[d]);
        hi[d] = std::max(hi[d], p[d]);
      }
    const auto m = geometric_median<3>(pts);
    for (size_t d = 0; d < 3; ++d) {
      CHECK(m[d] >= lo[d] - 1e-9);
      CHECK(m[d] <= hi[d] + 1e-9);
    }
  }
}

TEST_CASE("random sets agree with the oracle") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Point<2>> pts;
    const int n = 3 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    const auto m = geometric_median<2>(pts, 1e-4, 2000);
    const auto o = tftest::grid_median<2>(pts);
    CHECK(dist2d(m, o) <= 1e-2);
  }
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Point<3>> pts;
    const int n = 3 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
    const auto m = geometric_median<3>(pts, 1e-4, 2000);
    const auto o = tftest::grid_median<3>(pts);
    const double d = std::sqrt((m[0] - o[0]) * (m[0] - o[0]) + (m[1] - o[1]) * (m[1] - o[1]) +
                               (m[2] - o[2]) * (m[2] - o[2]));
    CHECK(d <= 1e-2);
  }
}

TEST_CASE("float RGB kernel agrees with the double path") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> channel(0, 255);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 60);
    std::vector<Point<3>> pts;
    std::vector<float> xs(n), ys(n), zs(n);
    for (int i = 0; i < n; ++i) {
      const int r = channel(rng), g = channel(rng), b = channel(rng);
      pts.push_back({double(r), double(g), double(b)});
      xs[i] = float(r);
      ys[i] = float(g);
      zs[i] = float(b);
    }
    const auto d = geometric_median<3>(pts);
    const auto f = tf::weiszfeld_rgb(xs.data(), ys.data(), zs.data(), n);
    CHECK(std::abs(d[0] - f.x) < 0.5);
    CHECK(std::abs(d[1] - f.y) < 0.5);
    CHECK(std::abs(d[2] - f.z) < 0.5);
  }
}
