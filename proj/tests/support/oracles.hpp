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
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "skytrack/core/detection.hpp"
#include "skytrack/core/geometry.hpp"
#include "skytrack/core/image.hpp"

// Independent reference computations. Each avoids the code path it checks.
namespace skytrack::testing {

/// Monte-Carlo IoU: uniform points over the union's bounding rectangle.
inline double monte_carlo_iou(const BBox& a, const BBox& b, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double x0 = std::min(a.x, b.x), x1 = std::max(a.x + a.w, b.x + b.w);
  const double y0 = std::min(a.y, b.y), y1 = std::max(a.y + a.h, b.y + b.h);
  std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
  auto inside = [](const BBox& r, double px, double py) {
    return px >= r.x && px < r.x + r.w && py >= r.y && py < r.y + r.h;
  };
  long both = 0, either = 0;
  for (int i = 0; i < samples; ++i) {
    const double px = ux(rng), py = uy(rng);
    const bool ia = inside(a, px, py), ib = inside(b, px, py);
    both += ia && ib;
    either += ia || ib;
  }
  return either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
}

/// Center-distance plus size-difference cost written out from corners.
inline double corner_cost(const BBox& p, const BBox& c) {
  const double pcx = (2 * p.x + p.w) / 2, ccx = (2 * c.x + c.w) / 2;
  const double pcy = (2 * p.y + p.h) / 2, ccy = (2 * c.y + c.h) / 2;
  return std::fabs(pcx - ccx) + std::fabs(pcy - ccy) + std::fabs(p.w - c.w) + std::fabs(p.h - c.h);
}

/// Every candidate whose cost is minimal; the selection must be the first.
inline std::vector<std::size_t> brute_force_argmins(const BBox& prev, const std::vector<Detection>& cands) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::min(best, corner_cost(prev, c.box));
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (corner_cost(prev, cands[i].box) == best) out.push_back(i);
  }
  return out;
}

/// Exhaustive template search over every placement in the frame by sum of
/// squared differences. Returns the best top-left corner.
inline std::pair<int, int> brute_force_match(const Frame& frame, const Frame& templ) {
  std::pair<int, int> best{0, 0};
  long best_ssd = std::numeric_limits<long>::max();
  for (int oy = 0; oy + templ.height <= frame.height; ++oy) {
    for (int ox = 0; ox + templ.width <= frame.width; ++ox) {
      long ssd = 0;
      for (int y = 0; y < templ.height && ssd < best_ssd; ++y) {
        for (int x = 0; x < templ.width; ++x) {
          const long d = static_cast<long>(frame.at(ox + x, oy + y)) - templ.at(x, y);
          ssd += d * d;
        }
      }
      if (ssd < best_ssd) {
        best_ssd = ssd;
        best = {ox, oy};
      }
    }
  }
  return best;
}

inline Frame cut(const Frame& frame, int x0, int y0, int w, int h) {
  Frame t;
  t.width = w;
  t.height = h;
  t.pixels.resize(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) t.pixels[static_cast<std::size_t>(y) * w + x] = frame.at(x0 + x, y0 + y);
  }
  return t;
}

/// One image's predictions and truths for the AP oracle.
struct ApImage {
  std::vector<std::pair<BBox, double>> predictions;  // box, score
  std::vector<BBox> truths;
};

/// AP by enumerating every prefix of the score-ranked list. Each prefix is
/// matched from scratch; interpolated precision at a recall level is the
/// best precision of any prefix reaching at least that recall.
inline double brute_force_ap(const std::vector<ApImage>& images, double threshold = 0.5) {
  struct Item {
    double score;
    std::size_t image, index;
  };
  std::vector<Item> items;
  std::size_t total = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    total += images[i].truths.size();
    for (std::size_t k = 0; k < images[i].predictions.size(); ++k) {
      items.push_back({images[i].predictions[k].second, i, k});
    }
  }
  if (total == 0) return items.empty() ? 1.0 : 0.0;
  // Insertion sort keeps equal scores in input order.
  for (std::size_t i = 1; i < items.size(); ++i) {
    for (std::size_t j = i; j > 0 && items[j - 1].score < items[j].score; --j) std::swap(items[j - 1], items[j]);
  }
  std::vector<std::pair<double, double>> pr;  // recall, precision per prefix
  for (std::size_t len = 1; len <= items.size(); ++len) {
    std::vector<std::set<std::size_t>> used(images.size());
    std::size_t tp = 0;
    for (std::size_t p = 0; p < len; ++p) {
      const auto& it = items[p];
      const BBox& box = images[it.image].predictions[it.index].first;
      double best = -1.0;
      std::size_t best_t = 0;
      for (std::size_t t = 0; t < images[it.image].truths.size(); ++t) {
        if (used[it.image].count(t)) continue;
        const double v = iou(box, images[it.image].truths[t]);
        if (v >= threshold && v > best) {
          best = v;
          best_t = t;
        }
      }
      if (best >= 0.0) {
        used[it.image].insert(best_t);
        ++tp;
      }
    }
    pr.emplace_back(static_cast<double>(tp) / total, static_cast<double>(tp) / len);
  }
  std::set<double> levels;
  for (const auto& [r, p] : pr) levels.insert(r);
  double ap = 0.0, prev = 0.0;
  for (const double r : levels) {
    if (r <= 0.0) continue;
    double best_p = 0.0;
    for (const auto& [rr, pp] : pr) {
      if (rr >= r) best_p = std::max(best_p, pp);
    }
    ap += (r - prev) * best_p;
    prev = r;
  }
  return ap;
}

}  // namespace skytrack::testing
