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

#include <algorithm>
#include <cmath>
#include <opencv2/core.hpp>

#include "skytrack/core/image.hpp"

namespace skytrack::trackers::detail {

// Top-left frame pixel of a `size`-wide window whose middle index (size / 2)
// sits on the pixel containing `center`. Integer shifts of `center` shift the
// origin by exactly the same amount.
inline int window_origin(double center, int size) {
  return static_cast<int>(std::floor(center)) - size / 2;
}

// Copies a window out of the frame, replicating border pixels.
template <typename T>
cv::Mat extract_window(const Frame& frame, int ox, int oy, int w, int h, int type) {
  cv::Mat out(h, w, type);
  for (int r = 0; r < h; ++r) {
    const int sy = std::clamp(oy + r, 0, frame.height - 1);
    const auto* row = frame.pixels.data() + static_cast<std::size_t>(sy) * frame.width;
    auto* dst = out.ptr<T>(r);
    for (int c = 0; c < w; ++c) {
      dst[c] = static_cast<T>(row[std::clamp(ox + c, 0, frame.width - 1)]);
    }
  }
  return out;
}

}  // namespace skytrack::trackers::detail
