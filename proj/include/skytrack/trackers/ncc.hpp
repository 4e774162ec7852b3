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

#include <opencv2/core.hpp>

#include "skytrack/core/image.hpp"
#include "skytrack/trackers/types.hpp"

namespace skytrack::trackers {

// Raw template copied at initialization; never updated.
struct NccModel {
  cv::Mat templ;  // CV_32F, rounded box size
};

NccModel ncc_train(const Frame& frame, const BBox& box);

/// Exhaustive zero-mean normalized cross-correlation over the search window;
/// confidence is (best + 1) / 2.
StepResult ncc_step(const NccModel& model, const BBox& box, const Frame& frame);

}  // namespace skytrack::trackers
