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

#include <stdexcept>
#include <string>
#include <string_view>

namespace skytrack {

// Every failure surfaced by the library carries one of these codes. The
// names are part of the public contract (CLI error JSON, test assertions).
enum class Errc {
  kNoOverlap,
  kBoxTooSmall,
  kPayloadTooLarge,
  kBadFrame,
  kBadPayload,
  kUnknownVariant,
  kEmptyCandidates,
  kMissingFile,
  kLineCountMismatch,
  kMalformedBox,
  kNoTarget,
  kSchemaViolation,
  kSpecOutOfBounds,
  kFrameCountMismatch,
  kSweepNotApplicable,
  kBindFailure,
  kBadAnnotations,
  kMissionAborted,
  kConnectionFailure,
  kInvalidArgument,
  kIo,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace skytrack
