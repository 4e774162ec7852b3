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

#include "skytrack/core/error.hpp"

namespace skytrack {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kNoOverlap: return "NoOverlap";
    case Errc::kBoxTooSmall: return "BoxTooSmall";
    case Errc::kPayloadTooLarge: return "PayloadTooLarge";
    case Errc::kBadFrame: return "BadFrame";
    case Errc::kBadPayload: return "BadPayload";
    case Errc::kUnknownVariant: return "UnknownVariant";
    case Errc::kEmptyCandidates: return "EmptyCandidates";
    case Errc::kMissingFile: return "MissingFile";
    case Errc::kLineCountMismatch: return "LineCountMismatch";
    case Errc::kMalformedBox: return "MalformedBox";
    case Errc::kNoTarget: return "NoTarget";
    case Errc::kSchemaViolation: return "SchemaViolation";
    case Errc::kSpecOutOfBounds: return "SpecOutOfBounds";
    case Errc::kFrameCountMismatch: return "FrameCountMismatch";
    case Errc::kSweepNotApplicable: return "SweepNotApplicable";
    case Errc::kBindFailure: return "BindFailure";
    case Errc::kBadAnnotations: return "BadAnnotations";
    case Errc::kMissionAborted: return "MissionAborted";
    case Errc::kConnectionFailure: return "ConnectionFailure";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code) {}

}  // namespace skytrack
