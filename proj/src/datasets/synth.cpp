/*
 * Copyright 2026 The SkyTrack Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "skytrack/datasets/synth.hpp"

#include <array>
#include <cmath>
#include <random>

#include <opencv2/core.hpp>
#include <opencv2/imgproc.hpp>

#include "skytrack/core/error.hpp"
#include "skytrack/core/timing.hpp"

namespace skytrack::datasets {
namespace fs = std::filesystem;

bool SynthSpec::occluded(int frame) const {
  for (const auto& w : occlusions) {
    if (frame >= w.first && frame <= w.last) return true;
  }
  return false;
}

BBox SynthSpec::box_at(int frame) const {
  return {start.x + velocity_x * frame, start.y + velocity_y * frame, start.w, start.h};
}

void SynthSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::kSpecOutOfBounds, what); };
  if (width < 1 || height < 1) fail("frame size must be positive");
  if (frames < 0) fail("frame count must be non-negative");
  if (!(fps > 0.0)) fail("fps must be positive");
  if (!start.valid() || std::lround(start.w) < 1 || std::lround(start.h) < 1) fail("target size must be positive");
  if (target_cell < 1 || background_cell < 1) fail("texture cells must be positive");
  if (!(noise_sigma >= 0.0) || !(background_contrast >= 0.0) || !(target_contrast >= 0.0)) {
    fail("noise and contrast must be non-negative");
  }
  for (const auto& w : occlusions) {
    if (w.first > w.last) fail("occlusion window is reversed");
  }
  for (int f = 0; f < frames; ++f) {
    if (occluded(f)) continue;
    const BBox b = box_at(f);
    const long px = std::lround(b.x);
    const long py = std::lround(b.y);
    if (b.x < 0.0 || b.y < 0.0 || b.right() > width || b.bottom() > height ||
        px + std::lround(b.w) > width || py + std::lround(b.h) > height) {
      fail("target leaves the frame at frame " + std::to_string(f));
    }
  }
  bool any_visible = false;
  for (int f = 0; f < frames && !any_visible; ++f) any_visible = !occluded(f);
  if (frames > 0 && !any_visible) fail("target is never visible");
}

std::vector<std::optional<BBox>> synth_ground_truth(const SynthSpec& spec) {
  spec.validate();
  std::vector<std::optional<BBox>> gt;
  gt.reserve(static_cast<std::size_t>(spec.frames));
  for (int f = 0; f < spec.frames; ++f) {
    if (spec.occluded(f)) {
      gt.emplace_back(std::nullopt);
    } else {
      gt.emplace_back(spec.box_at(f));
    }
  }
  return gt;
}

std::vector<Frame> render_frames(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);

  const int gw = spec.width / spec.background_cell + 2;
  const int gh = spec.height / spec.background_cell + 2;
  std::uniform_real_distribution<double> bg_value(128.0 - spec.background_contrast,
                                                  128.0 + spec.background_contrast);
  cv::Mat control(gh, gw, CV_32F);
  for (int y = 0; y < gh; ++y) {
    for (int x = 0; x < gw; ++x) control.at<float>(y, x) = static_cast<float>(bg_value(rng));
  }
  cv::Mat background;
  cv::resize(control, background, cv::Size(gw * spec.background_cell, gh * spec.background_cell), 0,
             0, cv::INTER_LINEAR);
  background = background(cv::Rect(0, 0, spec.width, spec.height)).clone();

  const int tw = static_cast<int>(std::lround(spec.start.w));
  const int th = static_cast<int>(std::lround(spec.start.h));
  std::uniform_real_distribution<double> cell_value(128.0 - spec.target_contrast,
                                                    128.0 + spec.target_contrast);
  cv::Mat target(th, tw, CV_32F);
  const int cw = (tw + spec.target_cell - 1) / spec.target_cell;
  const int ch = (th + spec.target_cell - 1) / spec.target_cell;
  std::vector<float> cells(static_cast<std::size_t>(cw) * ch);
  for (auto& c : cells) c = static_cast<float>(cell_value(rng));
  for (int y = 0; y < th; ++y) {
    for (int x = 0; x < tw; ++x) {
      target.at<float>(y, x) = cells[static_cast<std::size_t>(y / spec.target_cell) * cw +
                                     x / spec.target_cell];
    }
  }

  std::vector<Frame> frames;
  frames.reserve(static_cast<std::size_t>(spec.frames));
  for (int f = 0; f < spec.frames; ++f) {
    cv::Mat canvas = background.clone();
    if (!spec.occluded(f)) {
      const BBox b = spec.box_at(f);
      target.copyTo(canvas(cv::Rect(static_cast<int>(std::lround(b.x)),
                                    static_cast<int>(std::lround(b.y)), tw, th)));
    }
    if (spec.noise_sigma > 0.0) {
      std::mt19937_64 noise_rng(mix_seed(spec.seed, static_cast<std::uint64_t>(f) + 1));
      std::normal_distribution<double> noise(0.0, spec.noise_sigma);
      for (int y = 0; y < canvas.rows; ++y) {
        auto* row = canvas.ptr<float>(y);
        for (int x = 0; x < canvas.cols; ++x) row[x] += static_cast<float>(noise(noise_rng));
      }
    }
    Frame frame;
    frame.index = f;
    frame.timestamp = f / spec.fps;
    frame.width = spec.width;
    frame.height = spec.height;
    frame.pixels.resize(static_cast<std::size_t>(spec.width) * spec.height);
    for (int y = 0; y < canvas.rows; ++y) {
      const auto* row = canvas.ptr<float>(y);
      for (int x = 0; x < canvas.cols; ++x) {
        const double v = std::clamp(std::round(static_cast<double>(row[x])), 0.0, 255.0);
        frame.pixels[static_cast<std::size_t>(y) * spec.width + x] = static_cast<std::uint8_t>(v);
      }
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

Sequence synth_sequence(const SynthSpec& spec, const fs::path& dir) {
  const auto gt = synth_ground_truth(spec);
  const auto frames = render_frames(spec);
  fs::create_directories(dir / "frames");
  const int digits = std::max<int>(6, static_cast<int>(std::to_string(spec.frames).size()));
  for (const auto& f : frames) {
    auto name = std::to_string(f.index);
    name.insert(0, static_cast<std::size_t>(digits) - name.size(), '0');
    write_gray_png(dir / "frames" / (name + ".png"), f.width, f.height, f.pixels);
  }
  write_ground_truth(dir / "groundtruth.txt", gt);
  write_query(dir / "query.txt", spec.query, spec.fps);
  return load_sequence(dir);
}

Sequence synth_memory_sequence(const SynthSpec& spec) {
  return make_memory_sequence(spec.name, render_frames(spec), synth_ground_truth(spec), spec.query,
                              spec.fps);
}

namespace {

SemanticQuery person_query() {
  SemanticQuery q;
  q.superset_class = "person";
  q.description = "the person in the center of the field";
  return q;
}

}  // namespace

SynthSpec translation_fixture(std::uint64_t seed) {
  SynthSpec s;
  s.name = "translation";
  s.seed = seed;
  s.query = person_query();
  return s;
}

SynthSpec occlusion_fixture(std::uint64_t seed) {
  SynthSpec s = translation_fixture(seed);
  s.name = "occlusion";
  s.occlusions = {{30, 39}};
  // A dim, noisy target at sub-pixel speed leaves the tracker a residual
  // error that re-initialization corrects, so mIoU depends on t_c.
  s.velocity_x = 1.7;
  s.target_contrast = 20.0;
  s.noise_sigma = 10.0;
  return s;
}

SynthSpec static_fixture(std::uint64_t seed) {
  SynthSpec s = translation_fixture(seed);
  s.name = "static";
  s.start = {140.0, 100.0, 40.0, 40.0};
  s.velocity_x = 0.0;
  s.velocity_y = 0.0;
  return s;
}

std::vector<SardImage> synth_sard(int images, int persons_per_image, std::uint64_t seed, int width,
                                  int height) {
  if (images < 0 || persons_per_image < 0 || width < 1 || height < 1) {
    throw Error(Errc::kInvalidArgument, "synthetic SARD dimensions must be positive");
  }
  static constexpr std::array kPoses{Pose::kStanding, Pose::kWalking,    Pose::kRunning, Pose::kLayingDown,
                                     Pose::kSeated,   Pose::kNotDefined, Pose::kNull};
  static constexpr std::array<const char*, 6> kColors{"gray", "green", "blue", "red", "black", "white"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pose_pick(0, kPoses.size() - 1);
  std::uniform_int_distribution<std::size_t> color_pick(0, kColors.size() - 1);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // People occupy disjoint grid cells so truths never overlap.
  const int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(persons_per_image))));
  const int rows = std::max(1, (persons_per_image + cols - 1) / cols);
  const double cell_w = static_cast<double>(width) / cols;
  const double cell_h = static_cast<double>(height) / rows;

  std::vector<SardImage> out;
  out.reserve(static_cast<std::size_t>(images));
  for (int i = 0; i < images; ++i) {
    SardImage img;
    img.image = std::to_string(i) + ".png";
    img.width = width;
    img.height = height;
    for (int k = 0; k < persons_per_image; ++k) {
      const int cx = k % cols;
      const int cy = k / cols;
      PersonAttrs p;
      const double w = cell_w * (0.3 + 0.4 * unit(rng));
      const double h = cell_h * (0.3 + 0.4 * unit(rng));
      const double x = cx * cell_w + (cell_w - w) * unit(rng);
      const double y = cy * cell_h + (cell_h - h) * unit(rng);
      p.box = {std::min(x, width - w), std::min(y, height - h), w, h};
      p.pose = kPoses[pose_pick(rng)];
      p.shirt_color = kColors[color_pick(rng)];
      p.injured = is_injury_candidate(p.pose) && coin(rng);
      img.persons.push_back(std::move(p));
    }
    out.push_back(std::move(img));
  }
  return out;
}

}  // namespace skytrack::datasets
