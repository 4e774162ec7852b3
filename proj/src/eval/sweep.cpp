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

#include "skytrack/eval/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "skytrack/core/error.hpp"
#include "skytrack/eval/tracking.hpp"

namespace skytrack::eval {

std::vector<double> sweep_thresholds() {
  std::vector<double> out;
  out.reserve(kSweepSteps);
  for (std::size_t i = 0; i < kSweepSteps; ++i) out.push_back(static_cast<double>(30 + 5 * i) / 100.0);
  return out;
}

std::size_t select_threshold(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw Error(Errc::kInvalidArgument, "no sweep rows");
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i];
    const auto& b = rows[best];
    if (a.miou != b.miou ? a.miou > b.miou : a.fps != b.fps ? a.fps > b.fps : a.t_c < b.t_c) best = i;
  }
  return best;
}

SweepResult run_sweep(const std::vector<datasets::Sequence>& sequences,
                      const orchestrator::MissionConfig& base, unsigned workers) {
  if (!trackers::tracker_is_score_enabled(base.tracker)) {
    throw Error(Errc::kSweepNotApplicable, std::string(trackers::tracker_kind_name(base.tracker)) +
                                               " has no confidence score to threshold");
  }
  if (sequences.empty()) throw Error(Errc::kInvalidArgument, "sweep needs at least one sequence");

  const auto thresholds = sweep_thresholds();
  const std::size_t jobs = thresholds.size() * sequences.size();
  std::vector<TrackingEvalResult> results(jobs);

  auto run_job = [&](std::size_t j) {
    const auto& seq = sequences[j % sequences.size()];
    orchestrator::MissionConfig config = base;
    config.policy = {thresholds[j / sequences.size()], true};
    results[j] = miou(orchestrator::run_mission(seq, config), seq);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t j; (j = next.fetch_add(1)) < jobs;) run_job(j);
    }));
  }
  for (auto& f : pool) f.get();

  // Sums run in a fixed order, so rows do not depend on scheduling.
  SweepResult out;
  const double n = static_cast<double>(sequences.size());
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    SweepRow row;
    row.t_c = thresholds[t];
    double t_b_sum = 0.0;
    int t_b_count = 0;
    for (std::size_t s = 0; s < sequences.size(); ++s) {
      const auto& r = results[t * sequences.size() + s];
      row.miou += r.miou;
      row.fps += r.fps;
      row.fps_edge += r.fps_edge;
      row.backend_calls += r.backend_calls;
      if (r.mean_t_b) {
        t_b_sum += *r.mean_t_b;
        ++t_b_count;
      }
    }
    row.miou /= n;
    row.fps /= n;
    row.fps_edge /= n;
    row.backend_calls /= n;
    if (t_b_count > 0) row.mean_t_b = t_b_sum / t_b_count;
    out.rows.push_back(row);
  }
  out.selected = select_threshold(out.rows);
  return out;
}

}  // namespace skytrack::eval
