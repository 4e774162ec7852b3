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

#include <variant>

#include "skytrack/core/image.hpp"
#include "skytrack/trackers/mosse.hpp"
#include "skytrack/trackers/ncc.hpp"
#include "skytrack/trackers/types.hpp"

namespace skytrack::trackers {

/// Tracker-agnostic handle. Single owner; steps must be sequential.
struct TrackState {
  TrackerKind kind = TrackerKind::kStatic;
  BBox box;
  double confidence = 1.0;
  TrackStatus status = TrackStatus::kTracking;
  std::variant<std::monostate, MosseModel, NccModel> model;
  int frames_tracked = 0;
  MosseParams params;
};

/// Builds the tracker model from the patch at `box`.
/// Throws Errc::kNoOverlap if the box misses the frame and Errc::kBoxTooSmall
/// if either side is under kMinBoxSide.
TrackState tracker_init(TrackerKind kind, const Frame& frame, const BBox& box,
                        const MosseParams& params = {});

/// Advances one frame. A target that disappears shows up as low confidence;
/// a box pushed completely off the frame flips the status to kLost.
StepResult tracker_step(TrackState& state, const Frame& frame);

}  // namespace skytrack::trackers
