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

#include "skytrack/protocol/link.hpp"

#include <algorithm>
#include <cmath>

#include "skytrack/core/error.hpp"
#include "skytrack/core/timing.hpp"

namespace skytrack::protocol {

void LinkModel::validate() const {
  if (!(bandwidth_bps > 0.0) || !std::isfinite(bandwidth_bps)) {
    throw Error(Errc::kInvalidArgument, "link bandwidth must be positive");
  }
  if (!symmetric && !(downlink_bandwidth_bps > 0.0)) {
    throw Error(Errc::kInvalidArgument, "downlink bandwidth must be positive");
  }
  if (!(latency_s >= 0.0) || !std::isfinite(latency_s) || !(jitter_sigma_s >= 0.0)) {
    throw Error(Errc::kInvalidArgument, "link latency must be nonnegative");
  }
}

Link::Link(double bandwidth_bps, double latency_s, double jitter_sigma_s, std::uint64_t seed)
    : bandwidth_bps_(bandwidth_bps),
      latency_s_(latency_s),
      jitter_sigma_s_(jitter_sigma_s),
      rng_(seed) {
  if (!(bandwidth_bps_ > 0.0) || !(latency_s_ >= 0.0)) {
    throw Error(Errc::kInvalidArgument, "invalid link parameters");
  }
}

double Link::transmit(std::size_t bytes, double send_time) {
  const double start = std::max(send_time, busy_until_);
  const double on_wire = static_cast<double>(bytes) * 8.0 / bandwidth_bps_;
  busy_until_ = start + on_wire;
  double delivery = busy_until_ + latency_s_;
  if (jitter_sigma_s_ > 0.0) {
    std::normal_distribution<double> jitter(0.0, jitter_sigma_s_);
    delivery += std::abs(jitter(rng_));
    delivery = std::max(delivery, last_delivery_);  // a stream never reorders
  }
  last_delivery_ = delivery;
  return delivery;
}

DuplexLink::DuplexLink(const LinkModel& model)
    : uplink((model.validate(), model.bandwidth_bps), model.latency_s, model.jitter_sigma_s,
             mix_seed(model.seed, 0)),
      downlink(model.downlink_bps(), model.latency_s, model.jitter_sigma_s,
               mix_seed(model.seed, 1)) {}

double transmit(const LinkModel& link, std::size_t bytes, double send_time) {
  link.validate();
  return Link(link.bandwidth_bps, link.latency_s).transmit(bytes, send_time);
}

}  // namespace skytrack::protocol
