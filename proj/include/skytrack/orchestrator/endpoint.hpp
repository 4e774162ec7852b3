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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "skytrack/backend/oracle.hpp"
#include "skytrack/datasets/sequence.hpp"
#include "skytrack/protocol/service.hpp"
#include "skytrack/protocol/tcp.hpp"

namespace skytrack::orchestrator {

/// The back-end as the mission loop sees it: one framed request in, one
/// framed reply out. Link timing is applied by the caller.
class BackendEndpoint {
 public:
  virtual ~BackendEndpoint() = default;
  virtual std::vector<std::uint8_t> exchange(std::span<const std::uint8_t> request_frame) = 0;
};

/// Runs a handler in-process behind the real codec.
class InProcessEndpoint final : public BackendEndpoint {
 public:
  explicit InProcessEndpoint(protocol::Handler handler) : handler_(std::move(handler)) {}
  std::vector<std::uint8_t> exchange(std::span<const std::uint8_t> request_frame) override;

 private:
  protocol::Handler handler_;
};

class TcpEndpoint final : public BackendEndpoint {
 public:
  TcpEndpoint(const std::string& host, std::uint16_t port) : client_(host, port) {}
  std::vector<std::uint8_t> exchange(std::span<const std::uint8_t> request_frame) override {
    return client_.exchange_raw(request_frame);
  }

 private:
  protocol::TcpClient client_;
};

/// Ground truth of a tracking sequence: the frame's box, with attributes that
/// satisfy the query's predicate, or nothing while the target is absent.
protocol::TruthLookup sequence_truth(const datasets::Sequence& sequence);

std::unique_ptr<BackendEndpoint> make_oracle_endpoint(const datasets::Sequence& sequence,
                                                      const backend::BackendConfig& config);

}  // namespace skytrack::orchestrator
