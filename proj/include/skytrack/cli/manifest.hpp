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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace skytrack::cli {

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string file_sha256(const std::filesystem::path& file);

/// Everything needed to regenerate a run: the command, its merged
/// configuration (seeds included), the format versions it wrote and the
/// checksum of every artifact. Contains no wall-clock data.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::vector<std::filesystem::path> artifacts;  // relative to the output directory
};

nlohmann::json manifest_json(const RunManifest& manifest, const std::filesystem::path& out_dir);
/// Writes manifest.json into `out_dir` and returns its path.
std::filesystem::path write_manifest(const RunManifest& manifest, const std::filesystem::path& out_dir);

}  // namespace skytrack::cli
