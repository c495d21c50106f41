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

#include "ghosts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "median.hpp"

namespace tf {
namespace {

double rgb_distance(Rgb8 a, Rgb8 b) {
  const double dr = static_cast<double>(a.r) - b.r;
  const double dg = static_cast<double>(a.g) - b.g;
  const double db = static_cast<double>(a.b) - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

Rgb8 median_of(const std::vector<Point<3>>& pts) {
  const Point<3> m = geometric_median<3>(pts);
  return {round_channel(m[0]), round_channel(m[1]), round_channel(m[2])};
}

double center_distance(const Rect& a, const Rect& b) {
  const double ax = a.x0 + a.width / 2.0, ay = a.y0 + a.height / 2.0;
  const double bx = b.x0 + b.width / 2.0, by = b.y0 + b.height / 2.0;
  return std::hypot(ax - bx, ay - by);
}

double diagonal(const Rect& r) { return std::hypot(r.width, r.height); }

}  // namespace

SurroundingsStats surroundings_stats(const LabelMap& lm, const RasterImage& frame, int label,
                                     const Rect& bbox, const GhostConfig& cfg) {
  const int r = cfg.dilation_radius;
  std::vector<Point<3>> surround;
  const int x0 = std::max(0, bbox.x0 - r), x1 = std::min(lm.width, bbox.x1() + r);
  const int y0 = std::max(0, bbox.y0 - r), y1 = std::min(lm.height, bbox.y1() + r);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (lm.at(x, y) != 0) continue;
      bool near_object = false;
      for (int dy = -r; dy <= r && !near_object; ++dy)
        for (int dx = -r; dx <= r && !near_object; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx >= 0 && ny >= 0 && nx < lm.width && ny < lm.height && lm.at(nx, ny) == label)
            near_object = true;
        }
      if (near_object) {
        const Rgb8 p = frame.at(x, y);
        surround.push_back(
            {static_cast<double>(p.r), static_cast<double>(p.g), static_cast<double>(p.b)});
      }
    }
  }
  SurroundingsStats s;
  if (surround.empty()) return s;
  s.color = median_of(surround);
  double sq = 0.0;
  for (const auto& p : surround) {
    const Rgb8 q{round_channel(p[0]), round_channel(p[1]), round_channel(p[2])};
    const double d = rgb_distance(q, s.color);
    sq += d * d;
  }
  s.spread = std::sqrt(sq / surround.size());
  s.valid = s.spread <= cfg.spread_threshold;
  return s;
}

std::vector<ObjectStats> object_stats(const LabelMap& lm, const RasterImage& frame,
                                      const GhostConfig& cfg) {
  const auto info = component_info(lm);
  std::vector<ObjectStats> stats;
  stats.reserve(info.size());

  for (const auto& c : info) {
    ObjectStats s;
    s.label = c.label;
    s.area = c.area;
    s.bbox = c.bbox;
    s.compactness = static_cast<double>(c.area) /
                    (static_cast<double>(c.bbox.width) * c.bbox.height);

    std::vector<Point<3>> members;
    members.reserve(c.area);
    for (int y = c.bbox.y0; y < c.bbox.y1(); ++y)
      for (int x = c.bbox.x0; x < c.bbox.x1(); ++x)
        if (lm.at(x, y) == c.label) {
          const Rgb8 p = frame.at(x, y);
          members.push_back({static_cast<double>(p.r), static_cast<double>(p.g),
                             static_cast<double>(p.b)});
        }
    s.median_color = median_of(members);

    const SurroundingsStats ss = surroundings_stats(lm, frame, c.label, c.bbox, cfg);
    s.surroundings_valid = ss.valid;
    s.surroundings_color = ss.color;
    s.surroundings_spread = ss.spread;
    stats.push_back(std::move(s));
  }
  return stats;
}

std::vector<GhostVerdict> flag_ghosts(const std::vector<ObjectStats>& stats,
                                      const GhostConfig& cfg) {
  std::vector<GhostVerdict> verdicts;
  verdicts.reserve(stats.size());
  for (const auto& s : stats) verdicts.push_back({s.label, false, 0, ""});

  for (size_t i = 0; i < stats.size(); ++i) {
    for (size_t j = i + 1; j < stats.size(); ++j) {
      const ObjectStats& a = stats[i];
      const ObjectStats& b = stats[j];
      const double proximity = cfg.proximity_factor * std::max(diagonal(a.bbox), diagonal(b.bbox));
      if (center_distance(a.bbox, b.bbox) >= proximity) continue;
      const double area_diff = std::abs(static_cast<double>(a.area) - b.area) /
                               std::max<double>(std::max(a.area, b.area), 1.0);
      if (area_diff > cfg.area_tol) continue;
      if (std::abs(a.compactness - b.compactness) > cfg.comp_tol) continue;

      const double da = a.surroundings_valid ? rgb_distance(a.median_color, a.surroundings_color)
                                             : std::numeric_limits<double>::infinity();
      const double db = b.surroundings_valid ? rgb_distance(b.median_color, b.surroundings_color)
                                             : std::numeric_limits<double>::infinity();
      const size_t cand_idx = da <= db ? i : j;
      const ObjectStats& cand = stats[cand_idx];
      const ObjectStats& other = da <= db ? b : a;
      const double d_own = std::min(da, db);
      if (!cand.surroundings_valid) continue;  // both too varied
      if (d_own > cfg.match_threshold) continue;  // nobody matches their surroundings
      const double d_cross = rgb_distance(cand.median_color, other.median_color);
      if (d_own < d_cross) {
        GhostVerdict& v = verdicts[cand_idx];
        if (!v.suspected) {
          v.suspected = true;
          v.partner_label = other.label;
          char buf[160];
          std::snprintf(buf, sizeof buf,
                        "matches surroundings (d=%.1f) better than object %d (d=%.1f)",
                        d_own, other.label, d_cross);
          v.reason = buf;
        }
      }
    }
  }
  return verdicts;
}

}  // namespace tf
