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
#include <string>
#include <string_view>
#include <vector>

#include "skytrack/core/query.hpp"

namespace skytrack::datasets {

inline constexpr int kSardFormatVersion = 1;

struct SardImage {
  std::string image;  // path relative to the annotation file
  std::optional<int> width;
  std::optional<int> height;
  std::vector<PersonAttrs> persons;

  friend bool operator==(const SardImage&, const SardImage&) = default;
};

/// Strict rejects an injured person outside the injury-candidate poses;
/// lenient keeps it and records a warning.
enum class Strictness { kStrict, kLenient };

struct SardAnnotations {
  std::vector<SardImage> images;
  std::vector<std::string> warnings;
};

/// Accepts a root array of images or {"format_version": 1, "images": [...]}.
/// Each image is {image, width?, height?, persons: [{box: [x,y,w,h], pose,
/// shirt_color, injured}]}. Throws Errc::kSchemaViolation naming the JSON
/// path of the offending field, e.g. "$[0].persons[1].pose".
SardAnnotations parse_sard_annotations(std::string_view json_text,
                                       Strictness strictness = Strictness::kStrict);
SardAnnotations load_sard_annotations(const std::filesystem::path& file,
                                      Strictness strictness = Strictness::kStrict);

/// Versioned object form, keys sorted, two-space indent.
std::string format_sard_annotations(const std::vector<SardImage>& images);
void write_sard_annotations(const std::filesystem::path& file, const std::vector<SardImage>& images);

}  // namespace skytrack::datasets
