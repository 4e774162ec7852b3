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
#include <optional>
#include <string_view>

#include "skytrack/core/geometry.hpp"

namespace skytrack::trackers {

enum class TrackerKind { kMosse, kNcc, kStatic };

std::string_view tracker_kind_name(TrackerKind kind);
std::optional<TrackerKind> parse_tracker_kind(std::string_view name);

/// Whether the tracker's confidence is a genuine self-evaluation. The static
/// baseline reports a constant 1.0 and therefore is not score-enabled.
bool tracker_is_score_enabled(TrackerKind kind);

enum class TrackStatus { kTracking, kLost };

struct MosseParams {
  double learning_rate = 0.125;
  double gaussian_sigma = 2.0;
  double regularization = 1e-5;
  int train_perturbations = 8;
  int psr_sidelobe_exclusion = 5;  // half-width, i.e. an 11x11 window
  double psr_saturation = 20.0;
  std::uint64_t seed = 0;          // drives the training perturbations

  /// Throws Errc::kInvalidArgument when a field is out of range.
  void validate() const;
};

struct StepResult {
  BBox box;
  double confidence = 0.0;
};

/// Smallest box side a tracker accepts.
inline constexpr double kMinBoxSide = 8.0;

/// The search window spans this multiple of the box size.
inline constexpr double kSearchScale = 2.0;

}  // namespace skytrack::trackers
