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
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skytrack/protocol/message.hpp"

// Wire format: a 4-byte big-endian payload length followed by a UTF-8 JSON
// payload. Object keys are sorted and there is no insignificant whitespace,
// so equal messages always encode to equal bytes. Images travel as base64.
namespace skytrack::protocol {

inline constexpr std::size_t kLengthPrefixBytes = 4;
inline constexpr std::uint64_t kMaxPayloadBytes = 0xFFFFFFFFull;

/// Throws Errc::kPayloadTooLarge when `payload_size` does not fit the prefix.
void check_payload_size(std::uint64_t payload_size);

std::string to_payload(const WireMessage& msg);
WireMessage from_payload(std::string_view payload);

std::vector<std::uint8_t> encode(const WireMessage& msg);

/// Decodes exactly one complete frame. Errors: kBadFrame when the prefix is
/// truncated or disagrees with the byte count, kBadPayload for malformed JSON
/// or schema violations, kUnknownVariant for an unrecognized "type".
WireMessage decode(std::span<const std::uint8_t> bytes);

/// Splits a byte stream into frames; bytes may arrive in arbitrary chunks.
class FrameReader {
 public:
  void feed(std::span<const std::uint8_t> bytes);
  /// Next complete message, or nullopt if more bytes are needed.
  std::optional<WireMessage> next();
  std::size_t buffered() const { return buffer_.size(); }

 private:
  std::deque<std::uint8_t> buffer_;
};

/// Decodes a concatenation of frames. A trailing partial frame is kBadFrame.
std::vector<WireMessage> decode_all(std::span<const std::uint8_t> bytes);

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws Errc::kBadPayload on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace skytrack::protocol
