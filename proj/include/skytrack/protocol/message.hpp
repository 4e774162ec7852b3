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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skytrack/backend/oracle.hpp"
#include "skytrack/core/detection.hpp"
#include "skytrack/core/query.hpp"

namespace skytrack::protocol {

struct DetectRequest {
  std::uint64_t request_id = 0;
  SemanticQuery query;
  int frame_index = 0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> image;  // 8-bit grayscale, base64 on the wire

  friend bool operator==(const DetectRequest&, const DetectRequest&) = default;
};

struct DetectResponse {
  std::uint64_t request_id = 0;
  std::vector<Detection> detections;
  backend::BackendTimings timings;

  friend bool operator==(const DetectResponse&, const DetectResponse&) = default;
};

struct Ping {
  std::uint64_t request_id = 0;
  friend bool operator==(const Ping&, const Ping&) = default;
};

struct Pong {
  std::uint64_t request_id = 0;
  friend bool operator==(const Pong&, const Pong&) = default;
};

struct ErrorReply {
  std::uint64_t request_id = 0;
  std::string code;
  std::string message;

  friend bool operator==(const ErrorReply&, const ErrorReply&) = default;
};

using WireMessage = std::variant<DetectRequest, DetectResponse, Ping, Pong, ErrorReply>;

std::string_view variant_name(const WireMessage& msg);
std::uint64_t request_id_of(const WireMessage& msg);

}  // namespace skytrack::protocol
