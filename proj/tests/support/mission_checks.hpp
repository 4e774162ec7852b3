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

#include <gtest/gtest.h>

#include <optional>
#include <vector>

#include "skytrack/eval/tracking.hpp"
#include "skytrack/orchestrator/mission.hpp"

// Structural checks applied to every mission log a test produces.
namespace skytrack::testing {

/// Front-end compute never exceeds wall time on the virtual clock, so the
/// edge-only rate bounds the end-to-end rate from above.
inline void expect_metric_ordering(const orchestrator::MissionLog& log) {
  if (log.frames.empty()) return;
  const std::vector<std::optional<BBox>> no_gt(log.frames.size());
  const auto r = eval::evaluate_tracking(log, no_gt);
  EXPECT_GE(r.fps_edge, r.fps) << log.sequence << " t_c=" << log.policy.t_c;
  double edge = 0.0;
  for (const auto& f : log.frames) edge += f.edge_step_time;
  EXPECT_LE(edge, log.summary.total_time + 1e-12);
  // The clock can never run ahead of capture: N frames at the sequence rate.
  if (log.frames.size() > 1) {
    const double period = log.frames[1].timestamp - log.frames[0].timestamp;
    EXPECT_GE(log.summary.total_time, static_cast<double>(log.frames.size()) * period - 1e-9);
  }
}

inline orchestrator::MissionLog checked(orchestrator::MissionLog log) {
  expect_metric_ordering(log);
  return log;
}

}  // namespace skytrack::testing
