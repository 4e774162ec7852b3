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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skytrack/backend/oracle.hpp"
#include "skytrack/core/timing.hpp"
#include "skytrack/protocol/link.hpp"
#include "skytrack/trackers/types.hpp"

namespace skytrack::cli {

struct ServeOptions {
  std::uint16_t port = 7878;
  std::string bind = "127.0.0.1";
  std::string mode = "oracle";  // oracle | proxy
  std::filesystem::path annotations;  // SARD JSON file or sequence directory
  std::string upstream;               // host:port, proxy mode
  backend::BackendConfig backend;
};

struct TrackOptions {
  std::filesystem::path sequence;
  std::filesystem::path out;
  trackers::TrackerKind tracker = trackers::TrackerKind::kMosse;
  double t_c = 0.7;
  protocol::LinkModel link;
  std::string backend = "in-process";  // or host:port
  backend::BackendConfig backend_config;
  TimingMode timing = TimingMode::kModeled;
  bool overlays = true;
  std::uint64_t seed = 0;
};

struct EvalOptions {
  std::filesystem::path annotations;
  std::filesystem::path images;  // defaults to the annotation file's directory
  std::filesystem::path out;
  std::vector<std::string> tasks;  // default: all eight
  backend::BackendConfig backend;
  bool lenient = false;
};

struct SweepOptions {
  std::vector<std::filesystem::path> sequences;
  std::filesystem::path out;
  trackers::TrackerKind tracker = trackers::TrackerKind::kMosse;
  protocol::LinkModel link;
  backend::BackendConfig backend;
  TimingMode timing = TimingMode::kModeled;
  unsigned workers = 0;
  std::uint64_t seed = 0;
};

struct SynthOptions {
  std::filesystem::path out;
  std::string kind = "translation";  // translation | occlusion | static | sard
  std::optional<int> frames;
  std::uint64_t seed = 0;
  int sard_images = 50;
  int sard_persons = 6;
};

struct ProtocolCheckOptions {
  std::filesystem::path fixtures;
  std::string endpoint;  // optional live service to ping
};

/// Blocks until `stop` becomes true.
void cmd_serve(const ServeOptions& opts, const std::atomic<bool>& stop, std::ostream& out);
void cmd_track(const TrackOptions& opts, const nlohmann::json& config, std::ostream& out);
void cmd_eval(const EvalOptions& opts, const nlohmann::json& config, std::ostream& out);
void cmd_sweep(const SweepOptions& opts, const nlohmann::json& config, std::ostream& out);
void cmd_synth(const SynthOptions& opts, const nlohmann::json& config, std::ostream& out);
/// Returns false if any fixture failed.
bool cmd_protocol_check(const ProtocolCheckOptions& opts, std::ostream& out);

}  // namespace skytrack::cli
