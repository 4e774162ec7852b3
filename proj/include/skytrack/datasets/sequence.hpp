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
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "skytrack/core/geometry.hpp"
#include "skytrack/core/image.hpp"
#include "skytrack/core/query.hpp"

namespace skytrack::datasets {

inline constexpr int kFormatVersion = 1;
inline constexpr double kDefaultFps = 10.0;

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::size_t size() const = 0;
  virtual Frame load(std::size_t index, double timestamp) const = 0;
};

/// Frames plus per-frame ground truth (absent while the target is out of
/// view) and the query describing the target. Copies share one frame cache,
/// so decoded frames are reused across missions and threads.
class Sequence {
 public:
  Sequence(std::string name, std::vector<std::optional<BBox>> ground_truth, SemanticQuery query,
           double fps, std::shared_ptr<const FrameSource> frames);

  const std::string& name() const { return name_; }
  std::size_t size() const { return ground_truth_.size(); }
  bool empty() const { return ground_truth_.empty(); }
  double fps() const { return fps_; }
  double timestamp(std::size_t index) const { return static_cast<double>(index) / fps_; }
  const SemanticQuery& query() const { return query_; }
  const std::vector<std::optional<BBox>>& ground_truth() const { return ground_truth_; }

  /// Decodes on first access, then serves from the shared cache.
  std::shared_ptr<const Frame> frame(std::size_t index) const;

 private:
  struct Cache {
    std::shared_mutex mu;
    std::vector<std::shared_ptr<const Frame>> frames;
  };

  std::string name_;
  std::vector<std::optional<BBox>> ground_truth_;
  SemanticQuery query_;
  double fps_;
  std::shared_ptr<const FrameSource> source_;
  std::shared_ptr<Cache> cache_;
};

/// Reads a sequence directory:
///   frames/          zero-padded numbered images
///   groundtruth.txt  one "x,y,w,h" or "absent" line per frame
///   query.txt        optional "# key=value" header lines, then the superset
///                    class, the predicate ("key=value,..." or "none"), and the
///                    free-text description on the remaining lines.
/// Errors: kMissingFile, kLineCountMismatch, kMalformedBox (with line number),
/// kSchemaViolation for a malformed query file, kNoTarget if no frame has a box.
Sequence load_sequence(const std::filesystem::path& dir);

/// Sequence over frames already in memory (timestamps are reassigned).
Sequence make_memory_sequence(std::string name, std::vector<Frame> frames,
                              std::vector<std::optional<BBox>> ground_truth,
                              SemanticQuery query, double fps = kDefaultFps);

void write_ground_truth(const std::filesystem::path& file,
                        const std::vector<std::optional<BBox>>& ground_truth);
void write_query(const std::filesystem::path& file, const SemanticQuery& query, double fps);

std::vector<std::optional<BBox>> parse_ground_truth(std::string_view text,
                                                    const std::string& origin);
struct QueryFile {
  SemanticQuery query;
  double fps = kDefaultFps;
  int format_version = kFormatVersion;
};
QueryFile parse_query(std::string_view text, const std::string& origin);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace skytrack::datasets
