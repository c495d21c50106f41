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

#include "segment.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tf {
namespace {

// Offsets of the lattice disk of the given radius, row by row.
std::vector<std::pair<int, int>> disk_offsets(int radius) {
  std::vector<std::pair<int, int>> offs;
  const int r2 = radius * radius;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if (dx * dx + dy * dy <= r2) offs.emplace_back(dx, dy);
  return offs;
}

// Union-find with path halving.
struct UnionFind {
  std::vector<int32_t> parent;
  int32_t find(int32_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

long BitMask::popcount() const {
  return std::accumulate(bits_.begin(), bits_.end(), 0L,
                         [](long acc, uint8_t b) { return acc + (b != 0); });
}

BitMask raw_mask(const RasterImage& frame, const RasterImage& bg,
                 const SegmentationConfig& cfg) {
  if (!frame.same_size(bg)) throw std::runtime_error("frame/background dimensions differ");
  BitMask m(frame.width(), frame.height());
  const Rgb8* fp = frame.pixels().data();
  const Rgb8* bp = bg.pixels().data();
  uint8_t* bits = m.bits().data();
  const long n = frame.pixel_count();
  for (long i = 0; i < n; ++i) {
    const double d = color_distance(rgb_to_ycc(fp[i]), rgb_to_ycc(bp[i]), cfg.chroma_weight);
    bits[i] = d > cfg.color_threshold ? 1 : 0;
  }
  return m;
}

BitMask remove_pinholes(const BitMask& m) {
  BitMask out = m;
  const int w = m.width(), h = m.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool v = m.get(x, y);
      bool all_opposite = true;
      int neighbors = 0;
      auto probe = [&](int nx, int ny) {
        if (!m.in_bounds(nx, ny)) return;
        ++neighbors;
        if (m.get(nx, ny) == v) all_opposite = false;
      };
      probe(x - 1, y);
      probe(x + 1, y);
      probe(x, y - 1);
      probe(x, y + 1);
      if (neighbors > 0 && all_opposite) out.set(x, y, !v);
    }
  }
  return out;
}

BitMask disk_smooth(const BitMask& m, int radius, double majority) {
  if (radius < 1) throw std::invalid_argument("radius must be >= 1");
  const auto offs = disk_offsets(radius);
  const int w = m.width(), h = m.height();
  BitMask out(w, h);
  const bool interior_safe = w > 2 * radius && h > 2 * radius;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int total = 0, fg = 0;
      if (interior_safe && x >= radius && x < w - radius && y >= radius && y < h - radius) {
        total = static_cast<int>(offs.size());
        for (const auto& [dx, dy] : offs) fg += m.get(x + dx, y + dy);
      } else {
        for (const auto& [dx, dy] : offs) {
          if (!m.in_bounds(x + dx, y + dy)) continue;
          ++total;
          fg += m.get(x + dx, y + dy);
        }
      }
      out.set(x, y, fg > majority * total);
    }
  }
  return out;
}

BitMask smooth_schedule(const BitMask& m, const std::vector<DiskStep>& schedule) {
  BitMask out = m;
  for (const auto& step : schedule) out = disk_smooth(out, step.radius, step.majority);
  return out;
}

LabelMap label_components(const BitMask& m) {
  const int w = m.width(), h = m.height();
  LabelMap lm;
  lm.width = w;
  lm.height = h;
  lm.labels.assign(static_cast<size_t>(w) * h, 0);

  // Two-pass CCL: provisional labels with union-find, then renumber so final
  // labels follow raster first-touch order.
  UnionFind uf;
  uf.parent.push_back(0);  // slot 0 unused
  std::vector<int32_t> prov(static_cast<size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!m.get(x, y)) continue;
      const size_t idx = static_cast<size_t>(y) * w + x;
      int32_t neighbor_labels[4];
      int nn = 0;
      auto probe = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
        const int32_t l = prov[static_cast<size_t>(ny) * w + nx];
        if (l != 0) neighbor_labels[nn++] = l;
      };
      probe(x - 1, y);
      probe(x - 1, y - 1);
      probe(x, y - 1);
      probe(x + 1, y - 1);
      if (nn == 0) {
        const int32_t fresh = static_cast<int32_t>(uf.parent.size());
        uf.parent.push_back(fresh);
        prov[idx] = fresh;
      } else {
        int32_t mn = neighbor_labels[0];
        for (int i = 1; i < nn; ++i) mn = std::min(mn, neighbor_labels[i]);
        prov[idx] = mn;
        for (int i = 0; i < nn; ++i) uf.unite(mn, neighbor_labels[i]);
      }
    }
  }

  std::vector<int32_t> remap(uf.parent.size(), 0);
  int32_t next = 0;
  for (size_t i = 0; i < prov.size(); ++i) {
    if (prov[i] == 0) continue;
    const int32_t root = uf.find(prov[i]);
    if (remap[root] == 0) remap[root] = ++next;
    lm.labels[i] = remap[root];
  }
  lm.count = next;
  return lm;
}

std::vector<ComponentInfo> component_info(const LabelMap& lm) {
  std::vector<ComponentInfo> info(lm.count);
  for (int i = 0; i < lm.count; ++i) info[i].label = i + 1;
  for (int y = 0; y < lm.height; ++y) {
    for (int x = 0; x < lm.width; ++x) {
      const int32_t l = lm.at(x, y);
      if (l == 0) continue;
      ComponentInfo& c = info[l - 1];
      if (c.area == 0) {
        c.bbox = {x, y, 1, 1};
      } else {
        const int x1 = std::max(c.bbox.x1(), x + 1);
        const int y1 = std::max(c.bbox.y1(), y + 1);
        c.bbox.x0 = std::min(c.bbox.x0, x);
        c.bbox.y0 = std::min(c.bbox.y0, y);
        c.bbox.width = x1 - c.bbox.x0;
        c.bbox.height = y1 - c.bbox.y0;
      }
      ++c.area;
    }
  }
  return info;
}

namespace {

BitMask keep_labels(const LabelMap& lm, const std::vector<bool>& keep) {
  BitMask out(lm.width, lm.height);
  for (int y = 0; y < lm.height; ++y)
    for (int x = 0; x < lm.width; ++x) {
      const int32_t l = lm.at(x, y);
      out.set(x, y, l != 0 && keep[l - 1]);
    }
  return out;
}

}  // namespace

BitMask cull_small(const LabelMap& lm, long frame_area, double min_area_fraction) {
  const auto info = component_info(lm);
  const double threshold = min_area_fraction * static_cast<double>(frame_area);
  std::vector<bool> keep(lm.count);
  for (const auto& c : info) keep[c.label - 1] = !(static_cast<double>(c.area) < threshold);
  return keep_labels(lm, keep);
}

BitMask cull_thin(const LabelMap& lm, int min_thickness, double min_aspect) {
  const auto info = component_info(lm);
  std::vector<bool> keep(lm.count);
  for (const auto& c : info) {
    const int thin = std::min(c.bbox.width, c.bbox.height);
    const int thick = std::max(c.bbox.width, c.bbox.height);
    const double aspect = static_cast<double>(thick) / thin;
    keep[c.label - 1] = thin >= min_thickness && aspect <= min_aspect;
  }
  return keep_labels(lm, keep);
}

namespace {

// Marks background pixels (4-connected) inside bbox reachable from its
// border; the rest of the bbox background is enclosed.
void flood_outside(const BitMask& m, const Rect& bbox, std::vector<uint8_t>& outside) {
  const int bw = bbox.width, bh = bbox.height;
  outside.assign(static_cast<size_t>(bw) * bh, 0);
  std::vector<std::pair<int, int>> stack;
  auto push = [&](int lx, int ly) {
    if (lx < 0 || ly < 0 || lx >= bw || ly >= bh) return;
    const size_t idx = static_cast<size_t>(ly) * bw + lx;
    if (outside[idx]) return;
    if (m.get(bbox.x0 + lx, bbox.y0 + ly)) return;  // land
    outside[idx] = 1;
    stack.emplace_back(lx, ly);
  };
  for (int lx = 0; lx < bw; ++lx) {
    push(lx, 0);
    push(lx, bh - 1);
  }
  for (int ly = 0; ly < bh; ++ly) {
    push(0, ly);
    push(bw - 1, ly);
  }
  while (!stack.empty()) {
    const auto [lx, ly] = stack.back();
    stack.pop_back();
    push(lx - 1, ly);
    push(lx + 1, ly);
    push(lx, ly - 1);
    push(lx, ly + 1);
  }
}

// Appends enclosed background pixels of the bbox to 'filled'.
void collect_holes(const BitMask& m, const Rect& bbox, std::vector<std::pair<int, int>>& holes) {
  std::vector<uint8_t> outside;
  flood_outside(m, bbox, outside);
  for (int ly = 0; ly < bbox.height; ++ly)
    for (int lx = 0; lx < bbox.width; ++lx) {
      const int x = bbox.x0 + lx, y = bbox.y0 + ly;
      if (!m.get(x, y) && !outside[static_cast<size_t>(ly) * bbox.width + lx])
        holes.emplace_back(x, y);
    }
}

}  // namespace

BitMask fill_holes(const BitMask& m, const Rect& bbox) {
  if (bbox.x0 < 0 || bbox.y0 < 0 || bbox.x1() > m.width() || bbox.y1() > m.height() ||
      bbox.width < 1 || bbox.height < 1) {
    throw std::invalid_argument("bbox outside mask");
  }
  std::vector<std::pair<int, int>> holes;
  collect_holes(m, bbox, holes);
  BitMask out = m;
  for (const auto& [x, y] : holes) out.set(x, y, true);
  return out;
}

BitMask fill_holes_all(const BitMask& m) {
  const LabelMap lm = label_components(m);
  const auto info = component_info(lm);
  BitMask out = m;
  for (const auto& c : info) out = fill_holes(out, c.bbox);
  return out;
}

BitMask dilate8(const BitMask& m) {
  const int w = m.width(), h = m.height();
  BitMask out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool v = false;
      for (int dy = -1; dy <= 1 && !v; ++dy)
        for (int dx = -1; dx <= 1 && !v; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (m.in_bounds(nx, ny) && m.get(nx, ny)) v = true;
        }
      out.set(x, y, v);
    }
  return out;
}

BitMask fill_near_holes(const BitMask& m, const SegmentationConfig& cfg) {
  const int base_radius = cfg.disk_schedule.empty() ? 1 : cfg.disk_schedule.back().radius;
  const double majority = cfg.disk_schedule.empty() ? 0.5 : cfg.disk_schedule.back().majority;

  BitMask cur = m;
  for (int iter = 1; iter <= cfg.near_hole_max_iters; ++iter) {
    const BitMask dilated = dilate8(cur);
    const LabelMap lm = label_components(dilated);
    const auto info = component_info(lm);
    std::vector<std::pair<int, int>> holes;
    for (const auto& c : info) collect_holes(dilated, c.bbox, holes);
    // Enclosed pixels are background in the dilated copy, hence also in cur;
    // the dilation ring itself is never mapped back.
    if (holes.empty()) break;
    for (const auto& [x, y] : holes) cur.set(x, y, true);
    cur = disk_smooth(cur, base_radius + iter, majority);
  }
  return fill_holes_all(cur);
}

BitMask segment_frame(const RasterImage& frame, const RasterImage& bg,
                      const SegmentationConfig& cfg) {
  BitMask m = raw_mask(frame, bg, cfg);
  m = remove_pinholes(m);
  m = smooth_schedule(m, cfg.disk_schedule);
  m = cull_small(label_components(m), frame.pixel_count(), cfg.min_area_fraction);
  m = cull_thin(label_components(m), cfg.min_thickness, cfg.min_aspect);
  m = fill_holes_all(m);
  m = fill_near_holes(m, cfg);
  return m;
}

}  // namespace tf
