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
#include <vector>

#include "skytrack/core/geometry.hpp"
#include "skytrack/datasets/sequence.hpp"
#include "skytrack/orchestrator/mission.hpp"

namespace skytrack::eval {

struct TrackingEvalResult {
  double miou = 0.0;
  double fps = 0.0;       // frames / total virtual time
  double fps_edge = 0.0;  // frames / summed front-end compute
  std::optional<double> mean_t_b;
  std::vector<double> per_frame_iou;  // 0 where the ground truth is absent
  int gt_frames = 0;
  int absent_gt_with_box = 0;  // boxes reported while the target is out of view
  int backend_calls = 0;
};

/// Sum of per-frame IoU over frames with ground truth, divided by their
/// count. A missing prediction scores 0; a box on a frame without ground
/// truth scores 0 and is counted in absent_gt_with_box. Throws
/// Errc::kFrameCountMismatch when the log and the ground truth disagree.
TrackingEvalResult evaluate_tracking(const orchestrator::MissionLog& log,
                                     const std::vector<std::optional<BBox>>& ground_truth);
TrackingEvalResult miou(const orchestrator::MissionLog& log, const datasets::Sequence& sequence);

}  // namespace skytrack::eval
