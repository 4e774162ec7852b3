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

#include <string>

#include "skytrack/core/geometry.hpp"

namespace skytrack {

/// A proposed box. `verified` is set only once the verification stage ran and
/// accepted the proposal.
struct Detection {
  BBox box;
  double detector_score = 0.0;
  bool verified = false;
  std::string justification;

  friend bool operator==(const Detection&, const Detection&) = default;
};

}  // namespace skytrack
