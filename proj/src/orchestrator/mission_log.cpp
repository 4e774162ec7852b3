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

#include <nlohmann/json.hpp>

#include "skytrack/core/error.hpp"
#include "skytrack/orchestrator/mission.hpp"

namespace skytrack::orchestrator {
namespace {

using nlohmann::json;

inline constexpr int kLogFormatVersion = 1;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(Errc::kSchemaViolation, "mission log " + path + ": " + what);
}

const json& at(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) bad(path, "expected a number");
  return v.get<double>();
}

std::optional<double> maybe_number(const json& v, const std::string& path) {
  if (v.is_null()) return std::nullopt;
  return number(v, path);
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) bad(path, "expected an integer");
  return v.get<int>();
}

}  // namespace

std::string mission_log_to_json(const MissionLog& log) {
  json frames = json::array();
  for (const auto& f : log.frames) {
    json box = f.box ? json::array({f.box->x, f.box->y, f.box->w, f.box->h}) : json(nullptr);
    frames.push_back({{"frame", f.frame},
                      {"phase", std::string(phase_name(f.phase))},
                      {"box", std::move(box)},
                      {"confidence", optional_number(f.confidence)},
                      {"t_b", optional_number(f.t_b)},
                      {"edge_step_time", f.edge_step_time},
                      {"timestamp", f.timestamp},
                      {"completed_at", f.completed_at},
                      {"request_sent", f.request_sent}});
  }
  json root = {
      {"format_version", kLogFormatVersion},
      {"sequence", log.sequence},
      {"tracker", std::string(trackers::tracker_kind_name(log.tracker))},
      {"policy", {{"t_c", log.policy.t_c}, {"enabled", log.policy.enabled}}},
      {"frames", std::move(frames)},
      {"summary",
       {{"frames_total", log.summary.frames_total},
        {"backend_calls", log.summary.backend_calls},
        {"reacquisitions", log.summary.reacquisitions},
        {"total_time", log.summary.total_time}}},
  };
  return root.dump(1) + "\n";
}

MissionLog mission_log_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    bad("$", std::string("invalid JSON: ") + e.what());
  }
  if (integer(at(root, "format_version", "$"), "$.format_version") != kLogFormatVersion) {
    bad("$.format_version", "unsupported version");
  }
  MissionLog log;
  const auto& seq = at(root, "sequence", "$");
  if (!seq.is_string()) bad("$.sequence", "expected a string");
  log.sequence = seq.get<std::string>();
  const auto& kind = at(root, "tracker", "$");
  const auto parsed_kind = kind.is_string() ? trackers::parse_tracker_kind(kind.get<std::string>())
                                            : std::nullopt;
  if (!parsed_kind) bad("$.tracker", "unknown tracker");
  log.tracker = *parsed_kind;
  const auto& policy = at(root, "policy", "$");
  log.policy.t_c = number(at(policy, "t_c", "$.policy"), "$.policy.t_c");
  const auto& enabled = at(policy, "enabled", "$.policy");
  if (!enabled.is_boolean()) bad("$.policy.enabled", "expected a boolean");
  log.policy.enabled = enabled.get<bool>();

  const auto& frames = at(root, "frames", "$");
  if (!frames.is_array()) bad("$.frames", "expected an array");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    const std::string p = "$.frames[" + std::to_string(i) + "]";
    FrameRecord rec;
    rec.frame = integer(at(f, "frame", p), p + ".frame");
    const auto& phase = at(f, "phase", p);
    const auto parsed_phase = phase.is_string() ? parse_phase(phase.get<std::string>()) : std::nullopt;
    if (!parsed_phase) bad(p + ".phase", "unknown phase");
    rec.phase = *parsed_phase;
    const auto& box = at(f, "box", p);
    if (!box.is_null()) {
      if (!box.is_array() || box.size() != 4) bad(p + ".box", "expected [x, y, w, h]");
      rec.box = BBox{number(box[0], p + ".box"), number(box[1], p + ".box"),
                     number(box[2], p + ".box"), number(box[3], p + ".box")};
    }
    rec.confidence = maybe_number(at(f, "confidence", p), p + ".confidence");
    rec.t_b = maybe_number(at(f, "t_b", p), p + ".t_b");
    rec.edge_step_time = number(at(f, "edge_step_time", p), p + ".edge_step_time");
    rec.timestamp = number(at(f, "timestamp", p), p + ".timestamp");
    rec.completed_at = number(at(f, "completed_at", p), p + ".completed_at");
    const auto& sent = at(f, "request_sent", p);
    if (!sent.is_boolean()) bad(p + ".request_sent", "expected a boolean");
    rec.request_sent = sent.get<bool>();
    log.frames.push_back(rec);
  }

  const auto& summary = at(root, "summary", "$");
  log.summary.frames_total = integer(at(summary, "frames_total", "$.summary"), "$.summary.frames_total");
  log.summary.backend_calls = integer(at(summary, "backend_calls", "$.summary"), "$.summary.backend_calls");
  log.summary.reacquisitions =
      integer(at(summary, "reacquisitions", "$.summary"), "$.summary.reacquisitions");
  log.summary.total_time = number(at(summary, "total_time", "$.summary"), "$.summary.total_time");
  return log;
}

}  // namespace skytrack::orchestrator
