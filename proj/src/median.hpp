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

#ifndef TRAILFORGE_MEDIAN_HPP_
#define TRAILFORGE_MEDIAN_HPP_

#include <array>
#include <cstdint>
#include <span>

namespace tf {

inline constexpr double kMedianTol = 0.05;
inline constexpr int kMedianMaxIter = 100;

template <size_t N>
using Point = std::array<double, N>;

// Geometric median by Weiszfeld fixed-point iteration, started from the
// coordinate-wise mean. Stops when the step length drops below tol or after
// max_iter iterations. An iterate that lands within tol of an input point
// returns that point. Throws on empty input.
template <size_t N>
Point<N> geometric_median(std::span<const Point<N>> points,
                          double tol = kMedianTol, int max_iter = kMedianMaxIter);

extern template Point<2> geometric_median<2>(std::span<const Point<2>>, double, int);
extern template Point<3> geometric_median<3>(std::span<const Point<3>>, double, int);

struct Float3 {
  float x = 0.f, y = 0.f, z = 0.f;
};

// Same iteration specialized for per-pixel color work: structure-of-arrays
// input, single precision. xs/ys/zs hold n samples each.
Float3 weiszfeld_rgb(const float* xs, const float* ys, const float* zs, int n,
                     float tol = static_cast<float>(kMedianTol),
                     int max_iter = kMedianMaxIter);

}  // namespace tf

#endif  // TRAILFORGE_MEDIAN_HPP_
