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

#include "skytrack/cli/manifest.hpp"

#include <fstream>
#include <iterator>

#include <sodium.h>

#include "skytrack/core/error.hpp"
#include "skytrack/datasets/sard.hpp"
#include "skytrack/datasets/sequence.hpp"

namespace skytrack::cli {

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[crypto_hash_sha256_BYTES];
  crypto_hash_sha256(digest, bytes.data(), bytes.size());
  char hex[crypto_hash_sha256_BYTES * 2 + 1];
  sodium_bin2hex(hex, sizeof hex, digest, sizeof digest);
  return hex;
}

std::string file_sha256(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::kMissingFile, "cannot open " + file.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), {}};
  return sha256_hex(bytes);
}

nlohmann::json manifest_json(const RunManifest& manifest, const std::filesystem::path& out_dir) {
  nlohmann::json artifacts = nlohmann::json::object();
  for (const auto& a : manifest.artifacts) artifacts[a.generic_string()] = file_sha256(out_dir / a);
  return {{"command", manifest.command},
          {"config", manifest.config},
          {"format_versions",
           {{"mission_log", 1}, {"query", datasets::kFormatVersion}, {"sard", datasets::kSardFormatVersion}}},
          {"artifacts", std::move(artifacts)}};
}

std::filesystem::path write_manifest(const RunManifest& manifest, const std::filesystem::path& out_dir) {
  const auto path = out_dir / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot write " + path.string());
  out << manifest_json(manifest, out_dir).dump(2) << '\n';
  return path;
}

}  // namespace skytrack::cli
