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

#include "skytrack/cli/overlay.hpp"

#include <cmath>
#include <string>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "skytrack/core/error.hpp"

namespace skytrack::cli {
namespace {

void draw_box(cv::Mat& canvas, const BBox& b, const cv::Scalar& color) {
  const cv::Point tl(static_cast<int>(std::lround(b.x)), static_cast<int>(std::lround(b.y)));
  const cv::Point br(static_cast<int>(std::lround(b.right())) - 1,
                     static_cast<int>(std::lround(b.bottom())) - 1);
  cv::rectangle(canvas, tl, br, color, 1);
}

}  // namespace

void write_overlay(const std::filesystem::path& file, const Frame& frame,
                   const std::optional<BBox>& predicted, const std::optional<BBox>& truth,
                   std::string_view label) {
  const cv::Mat gray(frame.height, frame.width, CV_8UC1, const_cast<std::uint8_t*>(frame.pixels.data()));
  cv::Mat canvas;
  cv::cvtColor(gray, canvas, cv::COLOR_GRAY2BGR);
  if (truth) draw_box(canvas, *truth, {0, 200, 0});
  if (predicted) draw_box(canvas, *predicted, {0, 0, 255});
  cv::putText(canvas, std::string(label), {4, 14}, cv::FONT_HERSHEY_SIMPLEX, 0.4, {0, 255, 255}, 1,
              cv::LINE_AA);
  if (!cv::imwrite(file.string(), canvas)) throw Error(Errc::kIo, "cannot write " + file.string());
}

}  // namespace skytrack::cli
