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

#include "median.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tf {

template <size_t N>
Point<N> geometric_median(std::span<const Point<N>> points, double tol, int max_iter) {
  if (points.empty()) throw std::invalid_argument("no points");
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  const size_t n = points.size();

  Point<N> x{};
  for (const auto& p : points)
    for (size_t d = 0; d < N; ++d) x[d] += p[d];
  for (size_t d = 0; d < N; ++d) x[d] /= static_cast<double>(n);
  if (n == 1) return points[0];

  std::vector<double> dist(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    size_t nearest = 0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (size_t d = 0; d < N; ++d) {
        const double diff = x[d] - points[i][d];
        s += diff * diff;
      }
      dist[i] = std::sqrt(s);
      if (dist[i] < nearest_d) {
        nearest_d = dist[i];
        nearest = i;
      }
    }
    if (nearest_d < tol) return points[nearest];

    Point<N> next{};
    double wsum = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double w = 1.0 / dist[i];
      wsum += w;
      for (size_t d = 0; d < N; ++d) next[d] += w * points[i][d];
    }
    double step = 0.0;
    for (size_t d = 0; d < N; ++d) {
      next[d] /= wsum;
      const double diff = next[d] - x[d];
      step += diff * diff;
    }
    x = next;
    if (step < tol * tol) break;
  }
  return x;
}

template Point<2> geometric_median<2>(std::span<const Point<2>>, double, int);
template Point<3> geometric_median<3>(std::span<const Point<3>>, double, int);

namespace {

inline Float3 weiszfeld_iterate(Float3 start, const float* xs, const float* ys,
                                const float* zs, int n, float tol, int max_iter) {
  float mx = start.x, my = start.y, mz = start.z;
  const float tol2 = tol * tol;
  for (int iter = 0; iter < max_iter; ++iter) {
    // Distances below tol are clamped so the fused pass stays division-safe;
    // the anchor case is resolved after the loop.
    float sx = 0.f, sy = 0.f, sz = 0.f, sw = 0.f, min_d2 = std::numeric_limits<float>::max();
    for (int i = 0; i < n; ++i) {
      const float x = xs[i], y = ys[i], z = zs[i];
      const float dx = x - mx;
      const float dy = y - my;
      const float dz = z - mz;
      const float d2 = dx * dx + dy * dy + dz * dz;
      min_d2 = std::min(min_d2, d2);
      const float w = 1.f / std::sqrt(std::max(d2, tol2));
      sw += w;
      sx += w * x;
      sy += w * y;
      sz += w * z;
    }
    if (min_d2 < tol2) {
      int best = 0;
      float best_d2 = std::numeric_limits<float>::max();
      for (int i = 0; i < n; ++i) {
        const float dx = xs[i] - mx;
        const float dy = ys[i] - my;
        const float dz = zs[i] - mz;
        const float d2 = dx * dx + dy * dy + dz * dz;
        if (d2 < best_d2) {
          best_d2 = d2;
          best = i;
        }
      }
      return {xs[best], ys[best], zs[best]};
    }
    const float inv_w = 1.f / sw;
    const float nx = sx * inv_w, ny = sy * inv_w, nz = sz * inv_w;
    const float ex = nx - mx, ey = ny - my, ez = nz - mz;
    mx = nx;
    my = ny;
    mz = nz;
    if (ex * ex + ey * ey + ez * ez < tol2) break;
  }
  return {mx, my, mz};
}

}  // namespace

#if defined(__x86_64__) && defined(__GNUC__)
__attribute__((target_clones("default", "avx2", "avx512f")))
#endif
Float3 weiszfeld_rgb(const float* xs, const float* ys, const float* zs, int n,
                     float tol, int max_iter) {
  if (n <= 0) throw std::invalid_argument("no points");
  if (n == 1) return {xs[0], ys[0], zs[0]};
  float mx = 0.f, my = 0.f, mz = 0.f;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
    mz += zs[i];
  }
  const float inv_n = 1.f / static_cast<float>(n);
  return weiszfeld_iterate({mx * inv_n, my * inv_n, mz * inv_n}, xs, ys, zs, n, tol, max_iter);
}

}  // namespace tf
