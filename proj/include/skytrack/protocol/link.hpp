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

#include <cstddef>
#include <cstdint>
#include <random>

namespace skytrack::protocol {

/// Bandwidth-limited, fixed-latency connection. Defaults model a 5 Mbps
/// cellular uplink.
struct LinkModel {
  double bandwidth_bps = 5'000'000.0;
  double latency_s = 0.05;             // one way
  bool symmetric = true;
  double downlink_bandwidth_bps = 0.0; // used when !symmetric
  double jitter_sigma_s = 0.0;         // extra |N(0, sigma)| latency; off by default
  std::uint64_t seed = 0;

  /// Throws Errc::kInvalidArgument for bandwidth <= 0 or latency < 0.
  void validate() const;
  double downlink_bps() const { return symmetric ? bandwidth_bps : downlink_bandwidth_bps; }
};

/// One direction of a link in virtual time. Messages are serialized: one
/// starts transmitting only after the previous one has left the sender.
class Link {
 public:
  Link(double bandwidth_bps, double latency_s, double jitter_sigma_s = 0.0,
       std::uint64_t seed = 0);

  /// delivery = start + latency + bytes * 8 / bandwidth, where
  /// start = max(send_time, end of the previous transmission).
  double transmit(std::size_t bytes, double send_time);

  double busy_until() const { return busy_until_; }

 private:
  double bandwidth_bps_;
  double latency_s_;
  double jitter_sigma_s_;
  std::mt19937_64 rng_;
  double busy_until_ = 0.0;
  double last_delivery_ = 0.0;
};

struct DuplexLink {
  Link uplink;
  Link downlink;

  explicit DuplexLink(const LinkModel& model);
};

/// Stateless convenience for a single transmission on an idle link.
double transmit(const LinkModel& link, std::size_t bytes, double send_time);

}  // namespace skytrack::protocol
