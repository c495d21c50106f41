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

#include "pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>

#include "background.hpp"
#include "deshake.hpp"
#include "ghosts.hpp"
#include "image_io.hpp"
#include "median.hpp"
#include "segment.hpp"
#include "threading.hpp"
#include "trails.hpp"
#include "window_stream.hpp"

namespace tf {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

void Fnv1a::update(const void* data, size_t len) {
  const uint8_t* p = static_cast<const uint8_t*>(data);
  for (size_t i = 0; i < len; ++i) {
    h_ ^= p[i];
    h_ *= 1099511628211ull;
  }
}

void Fnv1a::update_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path.string());
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    update(buf, static_cast<size_t>(in.gcount()));
}

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
  return buf;
}

uint64_t StageManifest::fingerprint() const {
  Fnv1a f;
  f.update(stage);
  f.update(input_hash);
  f.update(config_hash);
  f.update(std::to_string(frames));
  return f.digest();
}

void StageManifest::write(const fs::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path.string());
  out << "stage=" << stage << "\n"
      << "input_hash=" << input_hash << "\n"
      << "config_hash=" << config_hash << "\n"
      << "frames=" << frames << "\n"
      << "complete=" << (complete ? 1 : 0) << "\n";
}

std::optional<StageManifest> StageManifest::read(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  StageManifest m;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "stage") m.stage = value;
    else if (key == "input_hash") m.input_hash = value;
    else if (key == "config_hash") m.config_hash = value;
    else if (key == "frames") m.frames = std::atoi(value.c_str());
    else if (key == "complete") m.complete = value == "1";
  }
  if (m.stage.empty()) return std::nullopt;
  return m;
}

std::string expand_encode_template(const std::string& tmpl, const std::string& pattern,
                                   int fps) {
  std::string out = tmpl;
  auto replace_all = [&](const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = out.find(from, pos)) != std::string::npos) {
      out.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all("{pattern}", pattern);
  replace_all("{fps}", std::to_string(fps));
  return out;
}

namespace {

void log_line(const std::string& msg) { std::fprintf(stderr, "[trailforge] %s\n", msg.c_str()); }

struct FrameSourceInfo {
  std::vector<fs::path> files;  // one per frame, temporal order
  std::string fingerprint;      // content-or-chain hash
};

// Validates dimensions against the first frame as frames are decoded.
class DimensionChecker {
 public:
  RasterImage check(int index, RasterImage img) {
    int expect_w = 0, expect_h = 0;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (width_ == 0) {
        width_ = img.width();
        height_ = img.height();
      }
      expect_w = width_;
      expect_h = height_;
    }
    if (img.width() != expect_w || img.height() != expect_h) {
      throw std::runtime_error("frame " + std::to_string(index) + ": dimensions " +
                               std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                               " differ from " + std::to_string(expect_w) + "x" +
                               std::to_string(expect_h));
    }
    return img;
  }

 private:
  std::mutex mu_;
  int width_ = 0, height_ = 0;
};

BitMask mask_from_image(const RasterImage& img) {
  BitMask m(img.width(), img.height());
  const Rgb8* p = img.pixels().data();
  uint8_t* bits = m.bits().data();
  for (long i = 0; i < img.pixel_count(); ++i) bits[i] = p[i].r > 127 ? 1 : 0;
  return m;
}

void write_mask_png(const fs::path& path, const BitMask& m) {
  std::vector<uint8_t> gray(m.bits().size());
  for (size_t i = 0; i < gray.size(); ++i) gray[i] = m.bits()[i] ? 255 : 0;
  write_png_gray(path, gray, m.width(), m.height());
}

struct ObjectRow {
  int label = 0;
  long area = 0;
  Rect bbox;
  double compactness = 0.0;
  Rgb8 median_color;
};

void write_objects_tsv(const fs::path& path, const std::vector<ObjectRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot write " + path.string());
  out << "#label\tarea\tx0\ty0\twidth\theight\tcompactness\tmedian_r\tmedian_g\tmedian_b\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d\t%ld\t%d\t%d\t%d\t%d\t%.6f\t%d\t%d\t%d\n", r.label,
                  r.area, r.bbox.x0, r.bbox.y0, r.bbox.width, r.bbox.height, r.compactness,
                  r.median_color.r, r.median_color.g, r.median_color.b);
    out << buf;
  }
}

std::vector<ObjectRow> read_objects_tsv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read " + path.string());
  std::vector<ObjectRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    ObjectRow r;
    int cr, cg, cb;
    if (!(ss >> r.label >> r.area >> r.bbox.x0 >> r.bbox.y0 >> r.bbox.width >> r.bbox.height >>
          r.compactness >> cr >> cg >> cb))
      throw io_error("malformed objects TSV: " + path.string());
    r.median_color = {static_cast<uint8_t>(cr), static_cast<uint8_t>(cg),
                      static_cast<uint8_t>(cb)};
    rows.push_back(r);
  }
  return rows;
}

void draw_bbox_outline(RasterImage& img, const Rect& r, Rgb8 color) {
  for (int x = r.x0; x < r.x1(); ++x) {
    if (img.bounds().contains(x, r.y0)) img.at(x, r.y0) = color;
    if (img.bounds().contains(x, r.y1() - 1)) img.at(x, r.y1() - 1) = color;
  }
  for (int y = r.y0; y < r.y1(); ++y) {
    if (img.bounds().contains(r.x0, y)) img.at(r.x0, y) = color;
    if (img.bounds().contains(r.x1() - 1, y)) img.at(r.x1() - 1, y) = color;
  }
}

// Removes and recreates a stage directory so stale outputs cannot leak into
// downstream listings.
void reset_dir(const fs::path& dir) {
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);
}

bool outputs_present(const fs::path& dir, int frames, const char* pattern) {
  char buf[64];
  for (int i = 0; i < frames; ++i) {
    std::snprintf(buf, sizeof buf, pattern, i);
    if (!fs::exists(dir / buf)) return false;
  }
  return true;
}

class PipelineRun {
 public:
  explicit PipelineRun(const PipelineConfig& cfg) : cfg_(cfg), threads_(resolve_threads(cfg.threads)) {}

  RunReport run();

 private:
  FrameSourceInfo input_source();
  FrameSourceInfo frames_after_deshake();
  void run_deshake(StageReport& report);
  void run_background(StageReport& report);
  void run_segment(StageReport& report);
  void run_ghosts(StageReport& report);
  void run_render(StageReport& report);

  // Returns true when the stage's cache is valid; otherwise clears its
  // directory and lets the caller regenerate. On regeneration the caller's
  // manifest is written with complete=1.
  bool try_cache(Stage stage, const fs::path& dir, const std::string& input_hash, int frames,
                 const char* file_pattern, StageManifest& manifest);
  std::string require_manifest_fp(Stage stage, const fs::path& dir);

  const PipelineConfig& cfg_;
  int threads_;
  fs::path work_;
  std::optional<FrameSourceInfo> input_;
  std::optional<FrameSourceInfo> frames_;  // post-deshake (or raw) frames
  int frame_count_ = 0;
  RunReport report_;
};

FrameSourceInfo PipelineRun::input_source() {
  if (input_) return *input_;
  FrameSourceInfo src;
  src.files = list_frames(cfg_.input_dir);
  if (src.files.empty()) throw io_error("no frames in " + cfg_.input_dir);
  Fnv1a h;
  for (const auto& f : src.files) {
    h.update(f.filename().string());
    h.update_file(f);
  }
  src.fingerprint = h.hex();
  input_ = src;
  frame_count_ = static_cast<int>(src.files.size());
  return src;
}

std::string PipelineRun::require_manifest_fp(Stage stage, const fs::path& dir) {
  const auto m = StageManifest::read(dir / "manifest.txt");
  if (!m || !m->complete || m->stage != stage_name(stage)) {
    throw config_error(std::string(stage_name(stage)) +
                       " outputs are required but not cached; enable the stage");
  }
  Fnv1a f;
  f.update(std::to_string(m->fingerprint()));
  return f.hex();
}

FrameSourceInfo PipelineRun::frames_after_deshake() {
  if (frames_) return *frames_;
  const fs::path stab = work_ / "stab";
  FrameSourceInfo src;
  if (cfg_.stage_enabled(Stage::kDeshake) ||
      StageManifest::read(stab / "manifest.txt").has_value()) {
    src.fingerprint = require_manifest_fp(Stage::kDeshake, stab);
    src.files.reserve(frame_count_);
    for (int i = 0; i < frame_count_; ++i) src.files.push_back(stab / frame_filename(i));
  } else {
    src = input_source();
  }
  frames_ = src;
  return src;
}

bool PipelineRun::try_cache(Stage stage, const fs::path& dir, const std::string& input_hash,
                            int frames, const char* file_pattern, StageManifest& manifest) {
  manifest.stage = stage_name(stage);
  manifest.input_hash = input_hash;
  Fnv1a ch;
  ch.update(cfg_.canonical_stage_text(stage));
  manifest.config_hash = ch.hex();
  manifest.frames = frames;
  manifest.complete = true;

  const auto existing = StageManifest::read(dir / "manifest.txt");
  if (existing && existing->complete && existing->stage == manifest.stage &&
      existing->input_hash == manifest.input_hash &&
      existing->config_hash == manifest.config_hash && existing->frames == frames &&
      (file_pattern == nullptr || outputs_present(dir, frames, file_pattern))) {
    return true;
  }
  reset_dir(dir);
  return false;
}

void PipelineRun::run_deshake(StageReport& report) {
  const FrameSourceInfo in = input_source();
  const fs::path dir = work_ / "stab";
  StageManifest manifest;
  if (try_cache(Stage::kDeshake, dir, in.fingerprint, frame_count_, "frame_%06d.png",
                manifest)) {
    report.cached = true;
    return;
  }
  if (frame_count_ < 1) throw io_error("no frames");

  auto checker = std::make_shared<DimensionChecker>();
  // Pass 1: pairwise offsets over grayscale frames, streamed.
  std::vector<Offset2D> steps(std::max(0, frame_count_ - 1));
  if (!steps.empty()) {
    run_window_stream<GrayImage>(
        frame_count_ - 1, frame_count_, threads_, [](int n) { return std::pair<int, int>{n, n + 1}; },
        [&](int i) { return to_grayscale(checker->check(i, read_image(in.files[i]))); },
        [&](int n, std::span<const std::shared_ptr<const GrayImage>> w) {
          try {
            steps[n] = frame_offset(*w[0], *w[1], cfg_.deshake);
          } catch (const std::exception& e) {
            throw std::runtime_error("frame pair (" + std::to_string(n) + "," +
                                     std::to_string(n + 1) + "): " + e.what());
          }
        },
        2 + threads_);
  } else {
    checker->check(0, read_image(in.files[0]));
  }

  const OffsetTrace trace = accumulate(steps);
  OffsetTrace corrections;
  corrections.reserve(trace.size());
  for (const auto& o : trace) corrections.push_back(-o);

  const RasterImage first = read_image(in.files[0]);
  const Rect crop = common_crop(corrections, first.width(), first.height());

  // Pass 2: emit aligned crops.
  run_window_stream<RasterImage>(
      frame_count_, frame_count_, threads_, [](int n) { return std::pair<int, int>{n, n}; },
      [&](int i) { return read_image(in.files[i]); },
      [&](int n, std::span<const std::shared_ptr<const RasterImage>> w) {
        write_png(dir / frame_filename(n), translate_crop(*w[0], corrections[n], crop));
      },
      1 + threads_);

  // Sidecar trace for manual verification.
  {
    std::ofstream tsv(dir / "offsets.tsv", std::ios::trunc);
    if (!tsv) throw io_error("cannot write offsets.tsv");
    tsv << "#frame\tdx\tdy\tcum_dx\tcum_dy\n";
    for (int i = 0; i < frame_count_; ++i) {
      const Offset2D step = i == 0 ? Offset2D{0, 0} : steps[i - 1];
      tsv << i << "\t" << step.dx << "\t" << step.dy << "\t" << trace[i].dx << "\t"
          << trace[i].dy << "\n";
    }
  }

  Offset2D mn{0, 0}, mx{0, 0};
  for (const auto& o : trace) {
    mn = {std::min(mn.dx, o.dx), std::min(mn.dy, o.dy)};
    mx = {std::max(mx.dx, o.dx), std::max(mx.dy, o.dy)};
  }
  report.trace_min = mn;
  report.trace_max = mx;
  manifest.write(dir / "manifest.txt");
}

void PipelineRun::run_background(StageReport& report) {
  const FrameSourceInfo in = frames_after_deshake();
  const fs::path dir = work_ / "bg";
  StageManifest manifest;
  if (try_cache(Stage::kBackground, dir, in.fingerprint, frame_count_, "frame_%06d.png",
                manifest)) {
    report.cached = true;
    return;
  }
  if (cfg_.window.width > frame_count_) {
    throw std::runtime_error("background.window (" + std::to_string(cfg_.window.width) +
                             ") exceeds frame count (" + std::to_string(frame_count_) + ")");
  }

  auto checker = std::make_shared<DimensionChecker>();
  const auto stats = sliding_background_stream(
      frame_count_, cfg_.window, threads_,
      [&](int i) { return checker->check(i, read_image(in.files[i])); },
      [&](int n, const RasterImage& bg) { write_png(dir / frame_filename(n), bg); });
  report.decoded_frames = stats.decoded_frames;
  manifest.write(dir / "manifest.txt");
}

void PipelineRun::run_segment(StageReport& report) {
  const FrameSourceInfo frames = frames_after_deshake();
  const fs::path bg_dir = work_ / "bg";
  Fnv1a chain;
  chain.update(frames.fingerprint);
  chain.update(require_manifest_fp(Stage::kBackground, bg_dir));
  const fs::path dir = work_ / "fg";
  StageManifest manifest;
  if (try_cache(Stage::kSegment, dir, chain.hex(), frame_count_, "frame_%06d.png", manifest)) {
    report.cached = true;
    return;
  }

  parallel_for(frame_count_, threads_, [&](long i) {
    try {
      const RasterImage frame = read_image(frames.files[i]);
      const RasterImage bg = read_image(bg_dir / frame_filename(static_cast<int>(i)));
      const BitMask mask = segment_frame(frame, bg, cfg_.segmentation);
      write_mask_png(dir / frame_filename(static_cast<int>(i)), mask);

      const LabelMap lm = label_components(mask);
      const auto info = component_info(lm);
      std::vector<ObjectRow> rows;
      rows.reserve(info.size());
      for (const auto& c : info) {
        ObjectRow r;
        r.label = c.label;
        r.area = c.area;
        r.bbox = c.bbox;
        r.compactness = static_cast<double>(c.area) /
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
        const Point<3> med = geometric_median<3>(members, cfg_.median_tol, cfg_.median_max_iter);
        r.median_color = {round_channel(med[0]), round_channel(med[1]), round_channel(med[2])};
        rows.push_back(r);
      }
      char buf[48];
      std::snprintf(buf, sizeof buf, "objects_%06d.tsv", static_cast<int>(i));
      write_objects_tsv(dir / buf, rows);
    } catch (const io_error&) {
      throw;
    } catch (const std::exception& e) {
      throw std::runtime_error("frame " + std::to_string(i) + ": " + e.what());
    }
  });
  manifest.write(dir / "manifest.txt");
}

void PipelineRun::run_ghosts(StageReport& report) {
  const FrameSourceInfo frames = frames_after_deshake();
  const fs::path fg_dir = work_ / "fg";
  Fnv1a chain;
  chain.update(frames.fingerprint);
  chain.update(require_manifest_fp(Stage::kSegment, fg_dir));
  const fs::path dir = work_ / "ghosts";
  StageManifest manifest;
  if (try_cache(Stage::kGhosts, dir, chain.hex(), frame_count_, "frame_%06d.tsv", manifest)) {
    report.cached = true;
    return;
  }

  parallel_for(frame_count_, threads_, [&](long i) {
    try {
      const int idx = static_cast<int>(i);
      const RasterImage frame = read_image(frames.files[i]);
      const BitMask mask = mask_from_image(read_image(fg_dir / frame_filename(idx)));
      const LabelMap lm = label_components(mask);

      char buf[48];
      std::snprintf(buf, sizeof buf, "objects_%06d.tsv", idx);
      const auto rows = read_objects_tsv(fg_dir / buf);

      // Object shape and color come from the segment stage's sidecar; only
      // the surroundings are measured here.
      std::vector<ObjectStats> stats;
      stats.reserve(rows.size());
      for (const auto& r : rows) {
        if (r.label < 1 || r.label > lm.count)
          throw std::runtime_error("objects TSV label out of range");
        ObjectStats s;
        s.label = r.label;
        s.area = r.area;
        s.bbox = r.bbox;
        s.compactness = r.compactness;
        s.median_color = r.median_color;
        const SurroundingsStats ss = surroundings_stats(lm, frame, r.label, r.bbox, cfg_.ghosts);
        s.surroundings_valid = ss.valid;
        s.surroundings_color = ss.color;
        s.surroundings_spread = ss.spread;
        stats.push_back(s);
      }
      const auto verdicts = flag_ghosts(stats, cfg_.ghosts);

      char name[48];
      std::snprintf(name, sizeof name, "frame_%06d.tsv", idx);
      std::ofstream out(dir / name, std::ios::trunc);
      if (!out) throw io_error("cannot write ghost verdicts");
      out << "#label\tsuspected\tpartner\treason\n";
      for (const auto& v : verdicts) {
        out << v.label << "\t" << (v.suspected ? 1 : 0) << "\t" << v.partner_label << "\t"
            << v.reason << "\n";
      }

      if (cfg_.ghost_overlay) {
        RasterImage overlay = frame;
        for (size_t k = 0; k < verdicts.size(); ++k) {
          if (verdicts[k].suspected) draw_bbox_outline(overlay, stats[k].bbox, {255, 0, 0});
        }
        std::snprintf(name, sizeof name, "overlay_%06d.png", idx);
        write_png(dir / name, overlay);
      }
    } catch (const io_error&) {
      throw;
    } catch (const std::exception& e) {
      throw std::runtime_error("frame " + std::to_string(i) + ": " + e.what());
    }
  });
  manifest.write(dir / "manifest.txt");
}

void PipelineRun::run_render(StageReport& report) {
  const FrameSourceInfo frames = frames_after_deshake();
  const fs::path bg_dir = work_ / "bg";
  const fs::path fg_dir = work_ / "fg";
  Fnv1a chain;
  chain.update(frames.fingerprint);
  chain.update(require_manifest_fp(Stage::kBackground, bg_dir));
  chain.update(require_manifest_fp(Stage::kSegment, fg_dir));
  const fs::path dir = work_ / "out";
  StageManifest manifest;
  if (!try_cache(Stage::kRender, dir, chain.hex(), frame_count_, "frame_%06d.png", manifest)) {
    render_stream(
        frame_count_, cfg_.render, threads_,
        [&](int i) {
          RenderItem item;
          item.frame = read_image(frames.files[i]);
          item.background = read_image(bg_dir / frame_filename(i));
          item.mask = mask_from_image(read_image(fg_dir / frame_filename(i)));
          if (!item.frame.same_size(item.background) ||
              item.frame.width() != item.mask.width() ||
              item.frame.height() != item.mask.height())
            throw std::runtime_error("frame " + std::to_string(i) + ": stream dimensions differ");
          return item;
        },
        [&](int n, const RasterImage& img) { write_png(dir / frame_filename(n), img); });
    manifest.write(dir / "manifest.txt");
  } else {
    report.cached = true;
  }

  if (!cfg_.encode.empty()) {
    const std::string cmd =
        expand_encode_template(cfg_.encode, (dir / "frame_%06d.png").string(), cfg_.fps);
    log_line("encode: " + cmd);
    const int rc = std::system(cmd.c_str());
    if (rc != 0)
      throw std::runtime_error("encoder command failed with status " + std::to_string(rc));
  }
}

RunReport PipelineRun::run() {
  const auto diags = cfg_.validate();
  if (!diags.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& d : diags) msg += "\n  - " + d;
    throw config_error(msg);
  }
  work_ = cfg_.work_dir;
  fs::create_directories(work_);
  input_source();  // errors early on unreadable input

  report_.threads = threads_;
  for (const Stage stage : cfg_.stages) {
    StageReport sr;
    sr.name = stage_name(stage);
    sr.frames = frame_count_;
    const auto t0 = Clock::now();
    switch (stage) {
      case Stage::kDeshake:
        run_deshake(sr);
        break;
      case Stage::kBackground:
        run_background(sr);
        break;
      case Stage::kSegment:
        run_segment(sr);
        break;
      case Stage::kGhosts:
        run_ghosts(sr);
        break;
      case Stage::kRender:
        run_render(sr);
        break;
    }
    sr.wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - t0)
            .count();
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s: %d frames in %.1f ms%s", sr.name.c_str(), sr.frames,
                  sr.wall_ms, sr.cached ? " (cached)" : "");
    std::string line = buf;
    if (sr.trace_min && sr.trace_max) {
      std::snprintf(buf, sizeof buf, "; cumulative dx [%d,%d] dy [%d,%d]", sr.trace_min->dx,
                    sr.trace_max->dx, sr.trace_min->dy, sr.trace_max->dy);
      line += buf;
    }
    log_line(line);
    report_.stages.push_back(std::move(sr));
  }

  nlohmann::json j;
  j["threads"] = report_.threads;
  j["stages"] = nlohmann::json::array();
  for (const auto& s : report_.stages) {
    nlohmann::json js;
    js["name"] = s.name;
    js["cached"] = s.cached;
    js["wall_ms"] = s.wall_ms;
    js["frames"] = s.frames;
    if (s.decoded_frames >= 0) js["decoded_frames"] = s.decoded_frames;
    if (s.trace_min && s.trace_max) {
      js["trace"] = {{"dx_min", s.trace_min->dx},
                     {"dx_max", s.trace_max->dx},
                     {"dy_min", s.trace_min->dy},
                     {"dy_max", s.trace_max->dy}};
    }
    j["stages"].push_back(js);
  }
  std::ofstream out(work_ / "run.json", std::ios::trunc);
  if (!out) throw io_error("cannot write run.json");
  out << j.dump(2) << "\n";
  return report_;
}

}  // namespace

RunReport run_pipeline(const PipelineConfig& cfg) { return PipelineRun(cfg).run(); }

}  // namespace tf
