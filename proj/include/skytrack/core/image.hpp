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
#include <filesystem>
#include <span>
#include <vector>

#include "skytrack/core/geometry.hpp"

namespace skytrack {

/// One camera frame as a row-major 8-bit grayscale buffer.
struct Frame {
  int index = 0;
  double timestamp = 0.0;  // seconds since mission start
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  bool valid() const {
    return width > 0 && height > 0 &&
           pixels.size() == static_cast<std::size_t>(width) * height;
  }
  std::uint8_t at(int px, int py) const {
    return pixels[static_cast<std::size_t>(py) * width + px];
  }
  BBox bounds() const {
    return {0.0, 0.0, static_cast<double>(width), static_cast<double>(height)};
  }
};

/// Integer-aligned crop of a frame. `region` always lies inside the frame.
struct ImagePatch {
  int source_frame = 0;
  BBox region;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

inline constexpr double kDefaultCropMargin = 50.0;

/// Luminance (299 R + 587 G + 114 B) / 1000, rounded to nearest. `rgb` is
/// interleaved with `channels` >= 3 values per pixel (extra channels ignored).
std::vector<std::uint8_t> to_grayscale(std::span<const std::uint8_t> rgb,
                                       int channels = 3);

/// Expands `box` by `margin` on every side, clamps to the frame and rounds
/// outward to whole pixels. Throws Errc::kNoOverlap when the box misses the
/// frame entirely.
ImagePatch crop_with_margin(const Frame& frame, const BBox& box,
                            double margin = kDefaultCropMargin);

/// Reads an 8-bit image (gray, BGR or BGRA) from disk as grayscale.
Frame read_frame_image(const std::filesystem::path& path, int index,
                       double timestamp);

/// Writes an 8-bit grayscale buffer as PNG.
void write_gray_png(const std::filesystem::path& path, int width, int height,
                    std::span<const std::uint8_t> pixels);

}  // namespace skytrack
