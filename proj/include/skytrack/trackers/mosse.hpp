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

// Minimum output sum of squared error correlation filter. The filter spans
// the whole search window (2x the box), so the learned template includes a
// band of context around the target.
struct MosseModel {
  int window_w = 0;
  int window_h = 0;
  cv::Mat hann;      // CV_64F window
  cv::Mat target;    // CV_64FC2 spectrum of the desired Gaussian response
  cv::Mat numer;     // running sum of G * conj(F)
  cv::Mat denom;     // running sum of F * conj(F)
};

MosseModel mosse_train(const Frame& frame, const BBox& box, const MosseParams& params);

/// Correlates over the window centered on `box`, returns the translated box
/// and min(PSR / saturation, 1), then folds the new appearance into `model`.
StepResult mosse_step(MosseModel& model, const BBox& box, const Frame& frame,
                      const MosseParams& params);

/// Peak-to-sidelobe ratio of a real response map. The (2*exclusion+1)^2
/// neighbourhood of the peak is left out of the sidelobe statistics.
double peak_to_sidelobe_ratio(const cv::Mat& response, cv::Point peak, int exclusion);

}  // namespace skytrack::trackers
