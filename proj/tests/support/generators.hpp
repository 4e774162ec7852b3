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
#include <random>
#include <string>
#include <vector>

#include "skytrack/core/detection.hpp"
#include "skytrack/core/geometry.hpp"
#include "skytrack/core/image.hpp"
#include "skytrack/core/query.hpp"
#include "skytrack/protocol/message.hpp"

// Seeded value generators for property tests.
namespace skytrack::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::uint64_t u64() { return rng_(); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(integer(0, static_cast<int>(items.size()) - 1))];
  }

  BBox box(double extent = 100.0, double min_side = 1.0, double max_side = 50.0) {
    return {real(-extent, extent), real(-extent, extent), real(min_side, max_side),
            real(min_side, max_side)};
  }

  BBox int_box(int extent = 60, int min_side = 1, int max_side = 40) {
    return {static_cast<double>(integer(0, extent)), static_cast<double>(integer(0, extent)),
            static_cast<double>(integer(min_side, max_side)),
            static_cast<double>(integer(min_side, max_side))};
  }

  Frame noise_frame(int width, int height, int index = 0) {
    Frame f;
    f.index = index;
    f.width = width;
    f.height = height;
    f.pixels.resize(static_cast<std::size_t>(width) * height);
    for (auto& p : f.pixels) p = static_cast<std::uint8_t>(integer(0, 255));
    return f;
  }

  Pose pose() {
    static const std::vector<Pose> all{Pose::kStanding, Pose::kWalking,    Pose::kRunning, Pose::kLayingDown,
                                       Pose::kSeated,   Pose::kNotDefined, Pose::kNull};
    return pick(all);
  }

  std::string color() {
    static const std::vector<std::string> colors{"gray", "green", "blue", "red", "dark_blue", "off-white"};
    return pick(colors);
  }

  // Arbitrary Unicode, quotes and control characters exercise JSON escaping.
  std::string text() {
    static const std::vector<std::string> pieces{"a", "Z", " ", "\"", "\\", "\n", "\t", "\x01", "é",
                                                 "数", "🙂", "/", "{", "}", ",", ":"};
    std::string s;
    const int n = integer(0, 12);
    for (int i = 0; i < n; ++i) s += pick(pieces);
    return s;
  }

  AttributePredicate predicate() {
    AttributePredicate p;
    if (coin()) p.pose = pose();
    if (coin()) p.shirt_color = color();
    if (coin()) p.injured = coin();
    return p;
  }

  PersonAttrs person(const BBox& b) {
    PersonAttrs a;
    a.box = b;
    a.pose = pose();
    a.shirt_color = color();
    a.injured = coin();
    return a;
  }

  SemanticQuery query() {
    SemanticQuery q;
    q.superset_class = coin() ? "person" : text() + "x";
    q.predicate = predicate();
    q.description = text();
    q.system_prompt = text();
    return q;
  }

  Detection detection() {
    Detection d;
    d.box = box();
    d.detector_score = real(0.0, 1.0);
    d.verified = coin();
    d.justification = text();
    return d;
  }

  protocol::WireMessage message() {
    switch (integer(0, 4)) {
      case 0: {
        protocol::DetectRequest r;
        r.request_id = u64();
        r.query = query();
        r.frame_index = integer(0, 100000);
        r.width = integer(1, 24);
        r.height = integer(1, 24);
        r.image = noise_frame(r.width, r.height).pixels;
        return r;
      }
      case 1: {
        protocol::DetectResponse r;
        r.request_id = u64();
        const int n = integer(0, 5);
        for (int i = 0; i < n; ++i) r.detections.push_back(detection());
        r.timings.t_f = real(0.0, 2.0);
        if (coin()) r.timings.t_obj = real(0.0, 1.0);
        r.timings.stages = {real(0.0, 1.0), real(0.0, 1.0), real(0.0, 1.0)};
        r.timings.stage2_calls = integer(0, 20);
        return r;
      }
      case 2:
        return protocol::Ping{u64()};
      case 3:
        return protocol::Pong{u64()};
      default:
        return protocol::ErrorReply{u64(), text(), text()};
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace skytrack::testing
