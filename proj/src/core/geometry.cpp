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

#include "skytrack/core/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace skytrack {

bool BBox::valid() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(w) &&
         std::isfinite(h) && w > 0.0 && h > 0.0;
}

std::optional<BBox> intersect(const BBox& a, const BBox& b) {
  const double x0 = std::max(a.x, b.x);
  const double y0 = std::max(a.y, b.y);
  const double x1 = std::min(a.right(), b.right());
  const double y1 = std::min(a.bottom(), b.bottom());
  if (x1 <= x0 || y1 <= y0) return std::nullopt;
  return BBox{x0, y0, x1 - x0, y1 - y0};
}

double iou(const BBox& a, const BBox& b) {
  const auto overlap = intersect(a, b);
  if (!overlap) return 0.0;
  // Areas from the same corner arithmetic as the overlap, so iou(a, a) is
  // exactly 1 even when x + w - x != w in floating point.
  const auto corner_area = [](const BBox& r) { return (r.right() - r.x) * (r.bottom() - r.y); };
  const double inter = overlap->area();
  const double uni = corner_area(a) + corner_area(b) - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double c_box(const BBox& prev, const BBox& cand) {
  return std::abs(prev.center_x() - cand.center_x()) +
         std::abs(prev.w - cand.w) +
         std::abs(prev.center_y() - cand.center_y()) +
         std::abs(prev.h - cand.h);
}

}  // namespace skytrack
