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

#include "skytrack/core/image.hpp"

#include <algorithm>
#include <cmath>
#include <opencv2/imgcodecs.hpp>

#include "skytrack/core/error.hpp"

namespace skytrack {

std::vector<std::uint8_t> to_grayscale(std::span<const std::uint8_t> rgb,
                                       int channels) {
  if (channels < 3 || rgb.size() % channels != 0) {
    throw Error(Errc::kInvalidArgument, "color buffer is not a whole number of pixels");
  }
  std::vector<std::uint8_t> gray(rgb.size() / channels);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    const auto* px = rgb.data() + i * channels;
    const unsigned lum = 299u * px[0] + 587u * px[1] + 114u * px[2];
    gray[i] = static_cast<std::uint8_t>((lum + 500u) / 1000u);
  }
  return gray;
}

ImagePatch crop_with_margin(const Frame& frame, const BBox& box, double margin) {
  if (!intersect(box, frame.bounds())) {
    throw Error(Errc::kNoOverlap, "box lies entirely outside the frame");
  }
  const double x0 = std::floor(std::max(0.0, box.x - margin));
  const double y0 = std::floor(std::max(0.0, box.y - margin));
  const double x1 = std::ceil(std::min<double>(frame.width, box.right() + margin));
  const double y1 = std::ceil(std::min<double>(frame.height, box.bottom() + margin));

  ImagePatch patch;
  patch.source_frame = frame.index;
  patch.region = {x0, y0, x1 - x0, y1 - y0};
  patch.width = static_cast<int>(x1 - x0);
  patch.height = static_cast<int>(y1 - y0);
  patch.pixels.resize(static_cast<std::size_t>(patch.width) * patch.height);
  const int ix = static_cast<int>(x0);
  const int iy = static_cast<int>(y0);
  for (int row = 0; row < patch.height; ++row) {
    const auto* src = frame.pixels.data() +
                      static_cast<std::size_t>(iy + row) * frame.width + ix;
    std::copy_n(src, patch.width,
                patch.pixels.data() + static_cast<std::size_t>(row) * patch.width);
  }
  return patch;
}

Frame read_frame_image(const std::filesystem::path& path, int index,
                       double timestamp) {
  const cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (img.empty()) {
    throw Error(Errc::kMissingFile, "cannot decode image " + path.string());
  }
  if (img.depth() != CV_8U) {
    throw Error(Errc::kInvalidArgument, "only 8-bit images are supported: " + path.string());
  }
  Frame frame;
  frame.index = index;
  frame.timestamp = timestamp;
  frame.width = img.cols;
  frame.height = img.rows;
  const cv::Mat dense = img.isContinuous() ? img : img.clone();
  const auto* data = dense.ptr<std::uint8_t>();
  const std::size_t count = static_cast<std::size_t>(img.cols) * img.rows;
  const int channels = img.channels();
  if (channels == 1) {
    frame.pixels.assign(data, data + count);
    return frame;
  }
  if (channels != 3 && channels != 4) {
    throw Error(Errc::kInvalidArgument, "unsupported channel count in " + path.string());
  }
  // OpenCV stores BGR(A); reorder to RGB before applying the luminance weights.
  std::vector<std::uint8_t> rgb(count * 3);
  for (std::size_t i = 0; i < count; ++i) {
    rgb[3 * i + 0] = data[i * channels + 2];
    rgb[3 * i + 1] = data[i * channels + 1];
    rgb[3 * i + 2] = data[i * channels + 0];
  }
  frame.pixels = to_grayscale(rgb, 3);
  return frame;
}

void write_gray_png(const std::filesystem::path& path, int width, int height,
                    std::span<const std::uint8_t> pixels) {
  if (pixels.size() != static_cast<std::size_t>(width) * height) {
    throw Error(Errc::kInvalidArgument, "pixel buffer does not match image size");
  }
  const cv::Mat img(height, width, CV_8UC1,
                    const_cast<std::uint8_t*>(pixels.data()));
  if (!cv::imwrite(path.string(), img)) {
    throw Error(Errc::kIo, "cannot write " + path.string());
  }
}

}  // namespace skytrack
