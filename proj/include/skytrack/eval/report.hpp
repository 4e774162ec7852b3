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

#include <string>

#include "skytrack/eval/detection.hpp"
#include "skytrack/eval/sweep.hpp"
#include "skytrack/eval/tracking.hpp"

// Report columns are stable: task, ap, map, t_f_ms, t_obj_ms for detection;
// t_c, miou, fps, fps_edge, t_b_ms for tracking and sweeps. Numbers print in
// shortest round-trip form; an absent value is an empty CSV cell or JSON null.
namespace skytrack::eval {

std::string detection_csv(const DetectionEvalResult& result);
std::string detection_json(const DetectionEvalResult& result);

std::string tracking_csv(const std::string& sequence, const orchestrator::ReinitPolicy& policy,
                         const TrackingEvalResult& result);
std::string tracking_json(const std::string& sequence, const orchestrator::ReinitPolicy& policy,
                          const TrackingEvalResult& result);

std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result);

}  // namespace skytrack::eval
