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

#include <filesystem>
#include <optional>
#include <string_view>

#include "skytrack/core/geometry.hpp"
#include "skytrack/core/image.hpp"

namespace skytrack::cli {

/// Frame with the ground-truth box in green, the predicted box in red and
/// the phase label in the top-left corner, written as PNG.
void write_overlay(const std::filesystem::path& file, const Frame& frame,
                   const std::optional<BBox>& predicted, const std::optional<BBox>& truth,
                   std::string_view label);

}  // namespace skytrack::cli
