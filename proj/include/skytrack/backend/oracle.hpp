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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skytrack/core/detection.hpp"
#include "skytrack/core/image.hpp"
#include "skytrack/core/query.hpp"
#include "skytrack/core/timing.hpp"

// Ground-truth-driven stand-in for the two-stage detection service: stage 1
// proposes every instance of the superset class, stage 2 checks each margin
// crop against the full attribute predicate. Noise channels emulate an
// imperfect detector and verifier.
namespace skytrack::backend {

struct OracleNoise {
  double miss_rate = 0.0;         // stage-1 false negatives
  double spurious_rate = 0.0;     // expected false positives per frame (Poisson)
  double jitter_sigma = 0.0;      // px, Gaussian noise on box corners
  double verify_flip_rate = 0.0;  // stage-2 wrong verdicts
  std::uint64_t seed = 0;

  void validate() const;
};

/// Emulated inference latency of the detector (per frame) and the verifier
/// (per call). Charged to the virtual timeline, never slept.
struct ModelLatency {
  double stage1_s = 0.02;
  double stage2_s = 0.01;
};

struct StageTimes {
  double propose = 0.0;
  double crop = 0.0;
  double verify = 0.0;

  friend bool operator==(const StageTimes&, const StageTimes&) = default;
};

struct BackendTimings {
  double t_f = 0.0;              // seconds for the whole frame
  std::optional<double> t_obj;   // mean seconds per stage-2 call; absent if none ran
  StageTimes stages;
  int stage2_calls = 0;

  friend bool operator==(const BackendTimings&, const BackendTimings&) = default;
};

struct BackendConfig {
  OracleNoise noise;
  double margin = kDefaultCropMargin;
  TimingMode timing = TimingMode::kModeled;
  ModelLatency latency;
};

/// Stage-1 output; `source` is the annotated person behind the proposal,
/// absent for spurious boxes.
struct Proposal {
  Detection detection;
  std::optional<PersonAttrs> source;
};

std::vector<Proposal> propose(const Frame& frame, std::string_view superset_class,
                              std::span<const PersonAttrs> truth, const OracleNoise& noise,
                              std::mt19937_64& rng);

struct Verdict {
  bool verified = false;
  std::string justification;
};

Verdict verify(const ImagePatch& patch, const SemanticQuery& query,
               const std::optional<PersonAttrs>& attrs, const OracleNoise& noise,
               std::mt19937_64& rng);

struct DetectResult {
  std::vector<Detection> detections;  // verified only
  BackendTimings timings;
};

/// propose -> crop_with_margin -> verify. Proposals whose crop misses the
/// frame are skipped. Randomness is seeded from (noise.seed, frame.index), so
/// concurrent requests stay reproducible.
DetectResult detect(const Frame& frame, const SemanticQuery& query,
                    std::span<const PersonAttrs> truth, const BackendConfig& config);

}  // namespace skytrack::backend
