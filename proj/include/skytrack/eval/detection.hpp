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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skytrack/backend/oracle.hpp"
#include "skytrack/core/detection.hpp"
#include "skytrack/datasets/sard.hpp"
#include "skytrack/datasets/tasks.hpp"

namespace skytrack::eval {

inline constexpr double kDefaultIouThreshold = 0.5;

/// Predictions and ground truth of one image.
struct DetectionSample {
  std::vector<Detection> predictions;
  std::vector<BBox> truths;
};

struct MatchCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;
};

/// Area under the all-point interpolated precision-recall curve. Predictions
/// are pooled across images, ranked by detector score (stable for ties) and
/// greedily matched to the highest-IoU unmatched truth of their image at
/// IoU >= threshold. No truths: 1 if there are also no predictions, else 0.
double average_precision(std::span<const DetectionSample> samples,
                         double iou_threshold = kDefaultIouThreshold);
double average_precision(std::span<const Detection> predictions, std::span<const BBox> truths,
                         double iou_threshold = kDefaultIouThreshold);

MatchCounts match_counts(std::span<const DetectionSample> samples,
                         double iou_threshold = kDefaultIouThreshold);

struct TaskResult {
  std::string task;
  double ap = 0.0;
  MatchCounts counts;
  double recall = 0.0;
  double mean_t_f = 0.0;
  std::optional<double> mean_t_obj;
  int images = 0;
  int stage2_frames = 0;  // images whose mean t_obj entered mean_t_obj
};

struct DetectionEvalResult {
  std::vector<TaskResult> tasks;
  double map = 0.0;
  MatchCounts counts;
  double recall = 0.0;  // TP / (TP + FN); 1 when there are no positives
  double mean_t_f = 0.0;
  std::optional<double> mean_t_obj;
};

/// mAP is the mean of the task APs; counts add up; timings are averaged
/// over images (t_f) and over images with stage-2 calls (t_obj).
DetectionEvalResult summarize_tasks(std::vector<TaskResult> tasks);

/// Runs the oracle back-end for every (task, image) pair. Images load from
/// `image_dir`; an absent file falls back to a flat frame when the
/// annotation carries width and height (the oracle answers from annotations).
DetectionEvalResult run_detection_eval(const std::vector<datasets::TaskSpec>& tasks,
                                       const std::vector<datasets::SardImage>& images,
                                       const std::filesystem::path& image_dir,
                                       const backend::BackendConfig& config);

}  // namespace skytrack::eval
