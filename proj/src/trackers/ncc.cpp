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

#include "skytrack/trackers/ncc.hpp"

#include <algorithm>
#include <cmath>
#include <opencv2/imgproc.hpp>

#include "window.hpp"

namespace skytrack::trackers {
namespace {

int rounded(double v) { return static_cast<int>(std::lround(v)); }

}  // namespace

NccModel ncc_train(const Frame& frame, const BBox& box) {
  NccModel model;
  model.templ = detail::extract_window<float>(frame, rounded(box.x), rounded(box.y),
                                              std::max(1, rounded(box.w)),
                                              std::max(1, rounded(box.h)), CV_32F);
  return model;
}

StepResult ncc_step(const NccModel& model, const BBox& box, const Frame& frame) {
  const int tw = model.templ.cols;
  const int th = model.templ.rows;
  const int rx = tw / 2;
  const int ry = th / 2;
  const cv::Mat search = detail::extract_window<float>(
      frame, rounded(box.x) - rx, rounded(box.y) - ry, tw + 2 * rx, th + 2 * ry, CV_32F);

  cv::Mat scores;
  cv::matchTemplate(search, model.templ, scores, cv::TM_CCOEFF_NORMED);
  double best = 0.0;
  cv::Point loc;
  cv::minMaxLoc(scores, nullptr, &best, nullptr, &loc);
  best = std::clamp(best, -1.0, 1.0);

  StepResult result;
  result.box = {box.x + (loc.x - rx), box.y + (loc.y - ry), box.w, box.h};
  result.confidence = (best + 1.0) / 2.0;
  return result;
}

}  // namespace skytrack::trackers
