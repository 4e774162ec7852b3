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

#include "skytrack/trackers/tracker.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "skytrack/core/error.hpp"

namespace skytrack::trackers {
namespace {

constexpr std::array<std::pair<TrackerKind, std::string_view>, 3> kKindNames{{
    {TrackerKind::kMosse, "mosse"},
    {TrackerKind::kNcc, "ncc"},
    {TrackerKind::kStatic, "static"},
}};

}  // namespace

std::string_view tracker_kind_name(TrackerKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "static";
}

std::optional<TrackerKind> parse_tracker_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool tracker_is_score_enabled(TrackerKind kind) {
  return kind == TrackerKind::kMosse || kind == TrackerKind::kNcc;
}

void MosseParams::validate() const {
  const bool ok = learning_rate > 0.0 && learning_rate <= 1.0 && gaussian_sigma > 0.0 &&
                  regularization > 0.0 && train_perturbations >= 0 &&
                  psr_sidelobe_exclusion > 0 && psr_saturation > 0.0;
  if (!ok) throw Error(Errc::kInvalidArgument, "mosse parameters out of range");
}

TrackState tracker_init(TrackerKind kind, const Frame& frame, const BBox& box,
                        const MosseParams& params) {
  if (!frame.valid()) throw Error(Errc::kInvalidArgument, "invalid frame");
  if (!box.valid() || !intersect(box, frame.bounds())) {
    throw Error(Errc::kNoOverlap, "initial box does not intersect the frame");
  }
  if (box.w < kMinBoxSide || box.h < kMinBoxSide) {
    throw Error(Errc::kBoxTooSmall, "initial box is smaller than 8x8 px");
  }
  params.validate();

  TrackState state;
  state.kind = kind;
  state.box = box;
  state.confidence = 1.0;
  state.status = TrackStatus::kTracking;
  state.params = params;
  switch (kind) {
    case TrackerKind::kMosse:
      state.model = mosse_train(frame, box, params);
      break;
    case TrackerKind::kNcc:
      state.model = ncc_train(frame, box);
      break;
    case TrackerKind::kStatic:
      break;
  }
  return state;
}

StepResult tracker_step(TrackState& state, const Frame& frame) {
  if (state.status != TrackStatus::kTracking) {
    throw Error(Errc::kInvalidArgument, "tracker must be re-initialized after losing the target");
  }
  StepResult result{state.box, 1.0};
  if (auto* mosse = std::get_if<MosseModel>(&state.model)) {
    result = mosse_step(*mosse, state.box, frame, state.params);
  } else if (const auto* ncc = std::get_if<NccModel>(&state.model)) {
    result = ncc_step(*ncc, state.box, frame);
  }
  if (!intersect(result.box, frame.bounds())) {
    state.status = TrackStatus::kLost;
    result.confidence = 0.0;
  }
  state.box = result.box;
  state.confidence = result.confidence;
  ++state.frames_tracked;
  return result;
}

}  // namespace skytrack::trackers
