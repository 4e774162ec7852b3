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

#include <cstddef>
#include <optional>
#include <vector>

#include "skytrack/datasets/sequence.hpp"
#include "skytrack/orchestrator/mission.hpp"

namespace skytrack::eval {

inline constexpr std::size_t kSweepSteps = 14;

/// 0.30, 0.35, ..., 0.95, each computed as an exact ratio of integers.
std::vector<double> sweep_thresholds();

/// Per-threshold means over the sequence set.
struct SweepRow {
  double t_c = 0.0;
  double miou = 0.0;
  double fps = 0.0;
  double fps_edge = 0.0;
  std::optional<double> mean_t_b;
  double backend_calls = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t selected = 0;  // row index of the chosen threshold
  double t_c_opt() const { return rows.at(selected).t_c; }
};

/// Index maximizing mIoU, then FPS, then minimizing t_c.
std::size_t select_threshold(const std::vector<SweepRow>& rows);

/// One mission per (sequence, threshold), run on up to `workers` threads
/// (0 = hardware concurrency). Throws Errc::kSweepNotApplicable for a
/// tracker without a self-evaluation score, and Errc::kInvalidArgument for
/// an empty sequence set.
SweepResult run_sweep(const std::vector<datasets::Sequence>& sequences,
                      const orchestrator::MissionConfig& base, unsigned workers = 0);

}  // namespace skytrack::eval
