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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skytrack/core/geometry.hpp"
#include "skytrack/core/image.hpp"
#include "skytrack/core/query.hpp"
#include "skytrack/datasets/sard.hpp"
#include "skytrack/datasets/sequence.hpp"

namespace skytrack::datasets {

/// Inclusive frame range during which the target is hidden.
struct OcclusionWindow {
  int first = 0;
  int last = 0;
};

/// A textured rectangle moving at constant velocity over a textured
/// background. Positions are analytic; rendering snaps to whole pixels.
struct SynthSpec {
  std::string name = "synthetic";
  int width = 320;
  int height = 240;
  int frames = 60;
  double fps = kDefaultFps;
  BBox start{40.0, 100.0, 40.0, 40.0};
  double velocity_x = 2.0;  // pixels per frame
  double velocity_y = 0.0;
  std::vector<OcclusionWindow> occlusions;
  int target_cell = 4;            // side of one target texture cell
  int background_cell = 16;       // spacing of background control points
  double background_contrast = 40.0;  // background spans 128 +/- this
  double target_contrast = 127.0;      // target cells span 128 +/- this
  double noise_sigma = 0.0;       // per-pixel sensor noise
  std::uint64_t seed = 0;
  SemanticQuery query;

  bool occluded(int frame) const;
  BBox box_at(int frame) const;
  /// Throws Errc::kSpecOutOfBounds unless every visible box lies in frame.
  void validate() const;
};

std::vector<Frame> render_frames(const SynthSpec& spec);
std::vector<std::optional<BBox>> synth_ground_truth(const SynthSpec& spec);

/// Writes the sequence directory in the load_sequence layout and loads it back.
Sequence synth_sequence(const SynthSpec& spec, const std::filesystem::path& dir);
Sequence synth_memory_sequence(const SynthSpec& spec);

/// The canonical fixtures used by tests and the CLI.
SynthSpec translation_fixture(std::uint64_t seed = 0);
SynthSpec occlusion_fixture(std::uint64_t seed = 0);
SynthSpec static_fixture(std::uint64_t seed = 0);

/// Random attribute-annotated images: `persons_per_image` people on a grid,
/// attributes drawn uniformly from the schema (injury only in candidate
/// poses). Images are named "<index>.png" and carry width/height.
std::vector<SardImage> synth_sard(int images, int persons_per_image, std::uint64_t seed,
                                  int width = 640, int height = 480);

}  // namespace skytrack::datasets
