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

#include "skytrack/eval/tracking.hpp"

#include "skytrack/core/error.hpp"

namespace skytrack::eval {

TrackingEvalResult evaluate_tracking(const orchestrator::MissionLog& log,
                                     const std::vector<std::optional<BBox>>& ground_truth) {
  if (log.frames.size() != ground_truth.size()) {
    throw Error(Errc::kFrameCountMismatch, "log has " + std::to_string(log.frames.size()) +
                                               " frames, ground truth has " +
                                               std::to_string(ground_truth.size()));
  }
  TrackingEvalResult r;
  r.per_frame_iou.reserve(ground_truth.size());
  double iou_sum = 0.0;
  double edge_sum = 0.0;
  double t_b_sum = 0.0;
  int t_b_count = 0;
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    const auto& rec = log.frames[i];
    if (rec.frame != static_cast<int>(i)) {
      throw Error(Errc::kFrameCountMismatch, "log record " + std::to_string(i) + " is frame " +
                                                 std::to_string(rec.frame));
    }
    double v = 0.0;
    if (ground_truth[i]) {
      ++r.gt_frames;
      if (rec.box) v = iou(*rec.box, *ground_truth[i]);
      iou_sum += v;
    } else if (rec.box) {
      ++r.absent_gt_with_box;
    }
    r.per_frame_iou.push_back(v);
    edge_sum += rec.edge_step_time;
    if (rec.t_b) {
      t_b_sum += *rec.t_b;
      ++t_b_count;
    }
  }
  const double frames = static_cast<double>(ground_truth.size());
  r.miou = r.gt_frames > 0 ? iou_sum / r.gt_frames : 0.0;
  r.fps = log.summary.total_time > 0.0 ? frames / log.summary.total_time : 0.0;
  r.fps_edge = edge_sum > 0.0 ? frames / edge_sum : 0.0;
  if (t_b_count > 0) r.mean_t_b = t_b_sum / t_b_count;
  r.backend_calls = log.summary.backend_calls;
  return r;
}

TrackingEvalResult miou(const orchestrator::MissionLog& log, const datasets::Sequence& sequence) {
  return evaluate_tracking(log, sequence.ground_truth());
}

}  // namespace skytrack::eval
