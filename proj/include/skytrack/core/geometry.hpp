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

#include <optional>

namespace skytrack {

/// Axis-aligned box in pixel units: top-left corner plus width/height,
/// stored at sub-pixel precision. A box is valid when w > 0 and h > 0.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double center_x() const { return x + w / 2.0; }
  double center_y() const { return y + h / 2.0; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }
  bool valid() const;

  static BBox from_center(double cx, double cy, double w, double h) {
    return {cx - w / 2.0, cy - h / 2.0, w, h};
  }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Overlapping region of two boxes, or nullopt if the overlap has no area.
std::optional<BBox> intersect(const BBox& a, const BBox& b);

/// Intersection over union, 0 when the boxes are disjoint.
double iou(const BBox& a, const BBox& b);

/// L1 distance between (center_x, center_y, w, h) of the two boxes. This is
/// the cost minimized when choosing a re-initialization candidate.
double c_box(const BBox& prev, const BBox& cand);

}  // namespace skytrack
