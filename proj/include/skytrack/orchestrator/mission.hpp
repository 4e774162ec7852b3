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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skytrack/backend/oracle.hpp"
#include "skytrack/core/detection.hpp"
#include "skytrack/core/timing.hpp"
#include "skytrack/datasets/sequence.hpp"
#include "skytrack/orchestrator/endpoint.hpp"
#include "skytrack/protocol/link.hpp"
#include "skytrack/trackers/tracker.hpp"

namespace skytrack::orchestrator {

struct ReinitPolicy {
  double t_c = 0.7;
  bool enabled = true;

  /// Enabled exactly when the tracker's confidence is a real self-evaluation.
  static ReinitPolicy for_tracker(trackers::TrackerKind kind, double t_c);
  /// Throws Errc::kInvalidArgument unless t_c is in [0, 1] and an enabled
  /// policy pairs with a score-enabled tracker.
  void validate(trackers::TrackerKind kind) const;
};

/// Nominal front-end costs charged in TimingMode::kModeled.
struct EdgeCosts {
  double frame_overhead_s = 0.0005;
  double tracker_step_s = 0.004;
  double static_step_s = 0.0002;
  double tracker_init_s = 0.006;
  double encode_s = 0.002;
  double decode_s = 0.0005;
};

struct MissionConfig {
  trackers::TrackerKind tracker = trackers::TrackerKind::kMosse;
  trackers::MosseParams mosse;
  ReinitPolicy policy;
  std::optional<SemanticQuery> query;  // defaults to the sequence's query
  protocol::LinkModel link;
  backend::BackendConfig backend;      // used by the in-process oracle
  TimingMode timing = TimingMode::kModeled;
  EdgeCosts costs;

  void validate() const;
};

enum class Phase { kSearching, kTracking, kReinit };
std::string_view phase_name(Phase phase);
std::optional<Phase> parse_phase(std::string_view name);

struct FrameRecord {
  int frame = 0;
  Phase phase = Phase::kSearching;
  std::optional<BBox> box;
  std::optional<double> confidence;
  std::optional<double> t_b;   // request send to reply decoded; set on the frame it completes
  double edge_step_time = 0.0; // front-end compute spent on this frame
  double timestamp = 0.0;      // camera capture time
  double completed_at = 0.0;   // virtual time the frame's output is ready
  bool request_sent = false;

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct MissionSummary {
  int frames_total = 0;
  int backend_calls = 0;
  int reacquisitions = 0;  // tracker initializations after the first
  double total_time = 0.0; // virtual seconds, at least the camera duration

  friend bool operator==(const MissionSummary&, const MissionSummary&) = default;
};

struct MissionLog {
  std::string sequence;
  trackers::TrackerKind tracker = trackers::TrackerKind::kMosse;
  ReinitPolicy policy;
  std::vector<FrameRecord> frames;
  MissionSummary summary;
};

/// argmin of c_box(prev, candidate) over verified candidates; the lowest
/// index wins ties. Throws Errc::kEmptyCandidates.
const Detection& select_reinit_candidate(const BBox& prev, const std::vector<Detection>& candidates);

/// Highest detector score among verified candidates; the lowest index wins
/// ties. Throws Errc::kEmptyCandidates.
const Detection& select_initial_candidate(const std::vector<Detection>& candidates);

bool should_reinit(const trackers::TrackState& state, const ReinitPolicy& policy);

/// Frame loop in virtual time. Frame k is captured at k / fps. A frame is
/// processed at max(capture, previous completion). At most one back-end
/// request is in flight; its reply is applied on the last frame whose
/// successor has not yet been captured when the reply lands. Throws
/// Errc::kMissionAborted when a reply cannot be decoded.
MissionLog run_mission(const datasets::Sequence& sequence, const MissionConfig& config,
                       BackendEndpoint& endpoint);
/// Same, against the in-process oracle answering from the sequence's truth.
MissionLog run_mission(const datasets::Sequence& sequence, const MissionConfig& config);

/// JSON form; field names are stable. Doubles print in shortest round-trip
/// form, so equal logs serialize to equal bytes.
std::string mission_log_to_json(const MissionLog& log);
MissionLog mission_log_from_json(std::string_view text);

}  // namespace skytrack::orchestrator
