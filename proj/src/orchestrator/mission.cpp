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

#include "skytrack/orchestrator/mission.hpp"

#include <algorithm>
#include <array>

#include "skytrack/core/error.hpp"
#include "skytrack/protocol/codec.hpp"

namespace skytrack::orchestrator {

using trackers::TrackerKind;
using trackers::TrackState;
using trackers::TrackStatus;

ReinitPolicy ReinitPolicy::for_tracker(TrackerKind kind, double t_c) {
  return {t_c, trackers::tracker_is_score_enabled(kind)};
}

void ReinitPolicy::validate(TrackerKind kind) const {
  if (!(t_c >= 0.0 && t_c <= 1.0)) throw Error(Errc::kInvalidArgument, "t_c must lie in [0, 1]");
  if (enabled && !trackers::tracker_is_score_enabled(kind)) {
    throw Error(Errc::kInvalidArgument, std::string("re-initialization needs a score-enabled tracker, not ") +
                                            std::string(trackers::tracker_kind_name(kind)));
  }
}

void MissionConfig::validate() const {
  policy.validate(tracker);
  mosse.validate();
  link.validate();
  backend.noise.validate();
  const std::array costs_list{costs.frame_overhead_s, costs.tracker_step_s, costs.static_step_s,
                              costs.tracker_init_s,   costs.encode_s,       costs.decode_s};
  for (const double c : costs_list) {
    if (!(c >= 0.0)) throw Error(Errc::kInvalidArgument, "edge costs must be non-negative");
  }
}

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::kSearching: return "Searching";
    case Phase::kTracking: return "Tracking";
    case Phase::kReinit: return "Reinit";
  }
  return "Searching";
}

std::optional<Phase> parse_phase(std::string_view name) {
  for (const Phase p : {Phase::kSearching, Phase::kTracking, Phase::kReinit}) {
    if (phase_name(p) == name) return p;
  }
  return std::nullopt;
}

const Detection& select_reinit_candidate(const BBox& prev, const std::vector<Detection>& candidates) {
  const Detection* best = nullptr;
  double best_cost = 0.0;
  for (const auto& c : candidates) {
    if (!c.verified) continue;
    const double cost = c_box(prev, c.box);
    if (!best || cost < best_cost) {
      best = &c;
      best_cost = cost;
    }
  }
  if (!best) throw Error(Errc::kEmptyCandidates, "no verified candidate");
  return *best;
}

const Detection& select_initial_candidate(const std::vector<Detection>& candidates) {
  const Detection* best = nullptr;
  for (const auto& c : candidates) {
    if (c.verified && (!best || c.detector_score > best->detector_score)) best = &c;
  }
  if (!best) throw Error(Errc::kEmptyCandidates, "no verified candidate");
  return *best;
}

bool should_reinit(const TrackState& state, const ReinitPolicy& policy) {
  return policy.enabled && state.confidence < policy.t_c;
}

namespace {

struct Pending {
  protocol::WireMessage reply;
  int request_frame = 0;
  double sent_at = 0.0;
  double arrival = 0.0;
};

// Charges either the measured duration of `work` or a fixed nominal cost.
class Meter {
 public:
  explicit Meter(TimingMode mode) : mode_(mode) {}

  template <typename F>
  decltype(auto) charge(double nominal, double& account, F&& work) {
    if (mode_ == TimingMode::kModeled) {
      account += nominal;
      return work();
    }
    Stopwatch sw;
    struct Finish {
      Stopwatch& sw;
      double& account;
      ~Finish() { account += sw.seconds(); }
    } finish{sw, account};
    return work();
  }

 private:
  TimingMode mode_;
};

}  // namespace

MissionLog run_mission(const datasets::Sequence& sequence, const MissionConfig& config,
                       BackendEndpoint& endpoint) {
  config.validate();
  const SemanticQuery query = config.query.value_or(sequence.query());
  const double frame_period = 1.0 / sequence.fps();
  const std::size_t n = sequence.size();

  MissionLog log;
  log.sequence = sequence.name();
  log.tracker = config.tracker;
  log.policy = config.policy;
  log.frames.reserve(n);

  protocol::DuplexLink link(config.link);
  Meter meter(config.timing);
  const double step_cost =
      config.tracker == TrackerKind::kStatic ? config.costs.static_step_s : config.costs.tracker_step_s;

  Phase phase = Phase::kSearching;
  std::optional<TrackState> tracker;
  std::optional<BBox> last_box;
  std::optional<Pending> pending;
  std::uint64_t next_request_id = 1;
  int acquisitions = 0;
  double now = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const auto frame = sequence.frame(k);
    FrameRecord rec;
    rec.frame = static_cast<int>(k);
    rec.timestamp = sequence.timestamp(k);
    const double deadline = k + 1 < n ? sequence.timestamp(k + 1) : rec.timestamp + frame_period;

    double t = std::max(rec.timestamp, now);
    double edge = 0.0;
    meter.charge(config.costs.frame_overhead_s, edge, [] {});

    auto send = [&](const Frame& f) {
      protocol::DetectRequest req;
      req.request_id = next_request_id++;
      req.query = query;
      req.frame_index = f.index;
      req.width = f.width;
      req.height = f.height;
      req.image = f.pixels;
      const auto bytes = meter.charge(config.costs.encode_s, edge, [&] { return protocol::encode(req); });
      const double sent_at = t + edge;
      const auto reply_bytes = endpoint.exchange(bytes);
      const double delivered = link.uplink.transmit(bytes.size(), sent_at);
      protocol::WireMessage reply;
      try {
        reply = protocol::decode(reply_bytes);
      } catch (const Error& e) {
        throw Error(Errc::kMissionAborted, "frame " + std::to_string(k) + ": " + e.what());
      }
      double service = 0.0;
      if (const auto* resp = std::get_if<protocol::DetectResponse>(&reply)) service = resp->timings.t_f;
      const double arrival = link.downlink.transmit(reply_bytes.size(), delivered + service);
      pending = Pending{std::move(reply), f.index, sent_at, arrival};
      rec.request_sent = true;
      ++log.summary.backend_calls;
    };

    auto start_tracking = [&](const Detection& chosen, int request_frame) {
      const auto source = sequence.frame(static_cast<std::size_t>(request_frame));
      try {
        meter.charge(config.costs.tracker_init_s, edge, [&] {
          tracker = trackers::tracker_init(config.tracker, *source, chosen.box, config.mosse);
        });
      } catch (const Error& e) {
        if (e.code() != Errc::kBoxTooSmall && e.code() != Errc::kNoOverlap) throw;
        tracker.reset();
        phase = Phase::kSearching;
        return;
      }
      if (acquisitions++ > 0) ++log.summary.reacquisitions;
      // The logged box on this frame is the detection itself; the tracker
      // first steps on the next frame.
      phase = Phase::kTracking;
    };

    // Local tracking on the fresh frame.
    if (tracker) {
      meter.charge(step_cost, edge, [&] { trackers::tracker_step(*tracker, *frame); });
      if (tracker->status == TrackStatus::kLost) {
        tracker.reset();
        phase = Phase::kSearching;
      } else if (phase == Phase::kTracking && !pending && should_reinit(*tracker, config.policy)) {
        phase = Phase::kReinit;
        send(*frame);
      }
    }
    if (phase == Phase::kSearching && !pending) send(*frame);

    // Reply, if it lands before the next frame is captured.
    if (pending && pending->arrival <= std::max(deadline, t + edge)) {
      t = std::max(t + edge, pending->arrival) - edge;
      Pending done = std::move(*pending);
      pending.reset();
      if (const auto* resp = std::get_if<protocol::DetectResponse>(&done.reply)) {
        meter.charge(config.costs.decode_s, edge, [] {});
        rec.t_b = done.arrival - done.sent_at;
        const auto& dets = resp->detections;
        const bool any_verified =
            std::any_of(dets.begin(), dets.end(), [](const Detection& d) { return d.verified; });
        if (any_verified) {
          const BBox* prev = tracker ? &tracker->box : (last_box ? &*last_box : nullptr);
          const Detection& chosen =
              prev ? select_reinit_candidate(*prev, dets) : select_initial_candidate(dets);
          start_tracking(chosen, done.request_frame);
        } else {
          tracker.reset();
          phase = Phase::kSearching;
        }
      } else {
        rec.t_b = done.arrival - done.sent_at;
        tracker.reset();
        phase = Phase::kSearching;
      }
    }

    rec.phase = phase;
    if (tracker) {
      rec.box = tracker->box;
      rec.confidence = tracker->confidence;
      last_box = tracker->box;
    }
    rec.edge_step_time = edge;
    now = t + edge;
    rec.completed_at = now;
    log.frames.push_back(rec);
  }

  log.summary.frames_total = static_cast<int>(n);
  log.summary.total_time = std::max(now, static_cast<double>(n) * frame_period);
  return log;
}

MissionLog run_mission(const datasets::Sequence& sequence, const MissionConfig& config) {
  auto endpoint = make_oracle_endpoint(sequence, config.backend);
  return run_mission(sequence, config, *endpoint);
}

}  // namespace skytrack::orchestrator
