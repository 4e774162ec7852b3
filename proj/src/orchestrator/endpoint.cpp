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

#include "skytrack/orchestrator/endpoint.hpp"

#include "skytrack/protocol/codec.hpp"

namespace skytrack::orchestrator {

std::vector<std::uint8_t> InProcessEndpoint::exchange(std::span<const std::uint8_t> request_frame) {
  return protocol::encode(handler_(protocol::decode(request_frame)));
}

protocol::TruthLookup sequence_truth(const datasets::Sequence& sequence) {
  auto gt = sequence.ground_truth();
  return [gt = std::move(gt)](int frame_index, const SemanticQuery& query) {
    std::vector<PersonAttrs> truth;
    if (frame_index >= 0 && static_cast<std::size_t>(frame_index) < gt.size() &&
        gt[static_cast<std::size_t>(frame_index)]) {
      truth.push_back(attrs_satisfying(query.predicate, *gt[static_cast<std::size_t>(frame_index)]));
    }
    return truth;
  };
}

std::unique_ptr<BackendEndpoint> make_oracle_endpoint(const datasets::Sequence& sequence,
                                                      const backend::BackendConfig& config) {
  return std::make_unique<InProcessEndpoint>(
      protocol::make_oracle_handler(config, sequence_truth(sequence)));
}

}  // namespace skytrack::orchestrator
