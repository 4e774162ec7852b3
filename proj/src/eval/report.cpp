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

#include "skytrack/eval/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "skytrack/datasets/sequence.hpp"

namespace skytrack::eval {
namespace {

using datasets::format_number;
using nlohmann::json;

std::string cell(const std::optional<double>& v, double scale = 1.0) {
  return v ? format_number(*v * scale) : std::string();
}

json maybe(const std::optional<double>& v, double scale = 1.0) {
  return v ? json(*v * scale) : json(nullptr);
}

json counts_json(const MatchCounts& c) { return {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}}; }

}  // namespace

std::string detection_csv(const DetectionEvalResult& result) {
  std::ostringstream out;
  out << "task,ap,map,t_f_ms,t_obj_ms,tp,fp,fn,recall\n";
  for (const auto& t : result.tasks) {
    out << t.task << ',' << format_number(t.ap) << ',' << format_number(result.map) << ','
        << format_number(t.mean_t_f * 1000.0) << ',' << cell(t.mean_t_obj, 1000.0) << ','
        << t.counts.tp << ',' << t.counts.fp << ',' << t.counts.fn << ','
        << format_number(t.recall) << '\n';
  }
  return out.str();
}

std::string detection_json(const DetectionEvalResult& result) {
  json tasks = json::array();
  for (const auto& t : result.tasks) {
    tasks.push_back({{"task", t.task},
                     {"ap", t.ap},
                     {"counts", counts_json(t.counts)},
                     {"recall", t.recall},
                     {"t_f_ms", t.mean_t_f * 1000.0},
                     {"t_obj_ms", maybe(t.mean_t_obj, 1000.0)}});
  }
  const json root = {{"tasks", std::move(tasks)},
                     {"map", result.map},
                     {"counts", counts_json(result.counts)},
                     {"recall", result.recall},
                     {"t_f_ms", result.mean_t_f * 1000.0},
                     {"t_obj_ms", maybe(result.mean_t_obj, 1000.0)}};
  return root.dump(2) + "\n";
}

std::string tracking_csv(const std::string& sequence, const orchestrator::ReinitPolicy& policy,
                         const TrackingEvalResult& r) {
  std::ostringstream out;
  out << "sequence,t_c,miou,fps,fps_edge,t_b_ms,backend_calls,absent_gt_with_box\n"
      << sequence << ',' << (policy.enabled ? format_number(policy.t_c) : std::string()) << ','
      << format_number(r.miou) << ',' << format_number(r.fps) << ',' << format_number(r.fps_edge)
      << ',' << cell(r.mean_t_b, 1000.0) << ',' << r.backend_calls << ',' << r.absent_gt_with_box
      << '\n';
  return out.str();
}

std::string tracking_json(const std::string& sequence, const orchestrator::ReinitPolicy& policy,
                          const TrackingEvalResult& r) {
  const json root = {{"sequence", sequence},
                     {"t_c", policy.enabled ? json(policy.t_c) : json(nullptr)},
                     {"miou", r.miou},
                     {"fps", r.fps},
                     {"fps_edge", r.fps_edge},
                     {"t_b_ms", maybe(r.mean_t_b, 1000.0)},
                     {"backend_calls", r.backend_calls},
                     {"gt_frames", r.gt_frames},
                     {"absent_gt_with_box", r.absent_gt_with_box},
                     {"per_frame_iou", r.per_frame_iou}};
  return root.dump(2) + "\n";
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "t_c,miou,fps,fps_edge,t_b_ms,backend_calls,selected\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    out << format_number(r.t_c) << ',' << format_number(r.miou) << ',' << format_number(r.fps) << ','
        << format_number(r.fps_edge) << ',' << cell(r.mean_t_b, 1000.0) << ','
        << format_number(r.backend_calls) << ',' << (i == result.selected ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string sweep_json(const SweepResult& result) {
  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"t_c", r.t_c},
                    {"miou", r.miou},
                    {"fps", r.fps},
                    {"fps_edge", r.fps_edge},
                    {"t_b_ms", maybe(r.mean_t_b, 1000.0)},
                    {"backend_calls", r.backend_calls}});
  }
  const json root = {{"rows", std::move(rows)}, {"t_c_opt", result.t_c_opt()}};
  return root.dump(2) + "\n";
}

}  // namespace skytrack::eval
