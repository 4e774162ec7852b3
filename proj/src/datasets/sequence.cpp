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

#include "skytrack/datasets/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <mutex>
#include <sstream>

#include "skytrack/core/error.hpp"

namespace skytrack::datasets {
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kMissingFile, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
    if (!text.empty() && text.front() == '-') return false;
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
}

bool is_image_file(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp" || ext == ".pgm" ||
         ext == ".ppm";
}

class FileFrameSource final : public FrameSource {
 public:
  explicit FileFrameSource(std::vector<fs::path> files) : files_(std::move(files)) {}
  std::size_t size() const override { return files_.size(); }
  Frame load(std::size_t index, double timestamp) const override {
    return read_frame_image(files_.at(index), static_cast<int>(index), timestamp);
  }

 private:
  std::vector<fs::path> files_;
};

class MemoryFrameSource final : public FrameSource {
 public:
  explicit MemoryFrameSource(std::vector<Frame> frames) : frames_(std::move(frames)) {}
  std::size_t size() const override { return frames_.size(); }
  Frame load(std::size_t index, double timestamp) const override {
    Frame f = frames_.at(index);
    f.index = static_cast<int>(index);
    f.timestamp = timestamp;
    return f;
  }

 private:
  std::vector<Frame> frames_;
};

std::vector<fs::path> list_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(Errc::kMissingFile, "missing directory " + dir.string());
  std::vector<std::pair<unsigned long long, fs::path>> numbered;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || !is_image_file(entry.path())) continue;
    const auto stem = entry.path().stem().string();
    unsigned long long n = 0;
    const auto [ptr, ec] = std::from_chars(stem.data(), stem.data() + stem.size(), n);
    if (ec != std::errc{} || ptr != stem.data() + stem.size()) {
      throw Error(Errc::kSchemaViolation, "frame file is not numbered: " + entry.path().string());
    }
    numbered.emplace_back(n, entry.path());
  }
  if (numbered.empty()) throw Error(Errc::kMissingFile, "no frame images in " + dir.string());
  std::sort(numbered.begin(), numbered.end());
  std::vector<fs::path> files;
  files.reserve(numbered.size());
  for (auto& [n, p] : numbered) files.push_back(std::move(p));
  return files;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Sequence::Sequence(std::string name, std::vector<std::optional<BBox>> ground_truth,
                   SemanticQuery query, double fps, std::shared_ptr<const FrameSource> frames)
    : name_(std::move(name)),
      ground_truth_(std::move(ground_truth)),
      query_(std::move(query)),
      fps_(fps),
      source_(std::move(frames)),
      cache_(std::make_shared<Cache>()) {
  if (!(fps_ > 0.0)) throw Error(Errc::kInvalidArgument, "fps must be positive");
  if (source_ && source_->size() != ground_truth_.size()) {
    throw Error(Errc::kLineCountMismatch, "frame count differs from ground-truth count");
  }
  cache_->frames.resize(ground_truth_.size());
}

std::shared_ptr<const Frame> Sequence::frame(std::size_t index) const {
  if (index >= size()) throw Error(Errc::kInvalidArgument, "frame index out of range");
  {
    std::shared_lock lock(cache_->mu);
    if (cache_->frames[index]) return cache_->frames[index];
  }
  auto decoded = std::make_shared<const Frame>(source_->load(index, timestamp(index)));
  std::unique_lock lock(cache_->mu);
  if (!cache_->frames[index]) cache_->frames[index] = std::move(decoded);
  return cache_->frames[index];
}

std::vector<std::optional<BBox>> parse_ground_truth(std::string_view text,
                                                    const std::string& origin) {
  auto lines = split_lines(text);
  std::vector<std::optional<BBox>> gt;
  gt.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    const std::string where = origin + ":" + std::to_string(i + 1);
    if (line.empty()) {
      // Only a trailing empty line is tolerated.
      const bool rest_empty = std::all_of(lines.begin() + static_cast<std::ptrdiff_t>(i),
                                          lines.end(), [](auto l) { return trim(l).empty(); });
      if (rest_empty) break;
      throw Error(Errc::kMalformedBox, where + ": empty line");
    }
    if (line == "absent") {
      gt.emplace_back(std::nullopt);
      continue;
    }
    double v[4];
    std::string_view rest = line;
    for (int k = 0; k < 4; ++k) {
      const auto comma = rest.find(',');
      if ((k < 3) == (comma == std::string_view::npos) || !parse_double(rest.substr(0, comma), v[k])) {
        throw Error(Errc::kMalformedBox, where + ": expected x,y,w,h or 'absent'");
      }
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    const BBox box{v[0], v[1], v[2], v[3]};
    if (!box.valid()) throw Error(Errc::kMalformedBox, where + ": width and height must be positive");
    gt.emplace_back(box);
  }
  return gt;
}

QueryFile parse_query(std::string_view text, const std::string& origin) {
  QueryFile out;
  auto lines = split_lines(text);
  std::size_t i = 0;
  for (; i < lines.size() && trim(lines[i]).starts_with('#'); ++i) {
    std::istringstream tokens{std::string(trim(lines[i]).substr(1))};
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      const auto key = token.substr(0, eq);
      const auto value = token.substr(eq + 1);
      const std::string where = origin + ":" + std::to_string(i + 1);
      if (key == "format_version") {
        try {
          out.format_version = std::stoi(value);
        } catch (const std::exception&) {
          throw Error(Errc::kSchemaViolation, where + ": bad format_version");
        }
        if (out.format_version != kFormatVersion) {
          throw Error(Errc::kSchemaViolation, where + ": unsupported format_version " + value);
        }
      } else if (key == "fps") {
        if (!parse_double(value, out.fps) || !(out.fps > 0.0)) {
          throw Error(Errc::kSchemaViolation, where + ": bad fps");
        }
      }
    }
  }
  if (i + 2 > lines.size()) {
    throw Error(Errc::kSchemaViolation, origin + ": expected superset class and predicate lines");
  }
  out.query.superset_class = std::string(trim(lines[i]));
  if (out.query.superset_class.empty()) {
    throw Error(Errc::kSchemaViolation, origin + ":" + std::to_string(i + 1) + ": empty superset class");
  }
  try {
    out.query.predicate = parse_predicate(lines[i + 1]);
  } catch (const Error& e) {
    throw Error(Errc::kSchemaViolation, origin + ":" + std::to_string(i + 2) + ": " + e.what());
  }
  std::string description;
  for (std::size_t k = i + 2; k < lines.size(); ++k) {
    if (!description.empty()) description += '\n';
    description += lines[k];
  }
  while (!description.empty() && description.back() == '\n') description.pop_back();
  out.query.description = std::move(description);
  return out;
}

Sequence load_sequence(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(Errc::kMissingFile, "no sequence directory " + dir.string());
  auto files = list_frames(dir / "frames");
  const auto gt_path = dir / "groundtruth.txt";
  const auto query_path = dir / "query.txt";
  auto gt = parse_ground_truth(read_file(gt_path), "groundtruth.txt");
  auto query = parse_query(read_file(query_path), "query.txt");
  if (gt.size() != files.size()) {
    throw Error(Errc::kLineCountMismatch, "groundtruth.txt has " + std::to_string(gt.size()) +
                                              " lines for " + std::to_string(files.size()) +
                                              " frames");
  }
  if (std::none_of(gt.begin(), gt.end(), [](const auto& b) { return b.has_value(); })) {
    throw Error(Errc::kNoTarget, "groundtruth.txt: no frame has a box");
  }
  return Sequence(dir.filename().string(), std::move(gt), std::move(query.query), query.fps,
                  std::make_shared<FileFrameSource>(std::move(files)));
}

Sequence make_memory_sequence(std::string name, std::vector<Frame> frames,
                              std::vector<std::optional<BBox>> ground_truth,
                              SemanticQuery query, double fps) {
  return Sequence(std::move(name), std::move(ground_truth), std::move(query), fps,
                  std::make_shared<MemoryFrameSource>(std::move(frames)));
}

void write_ground_truth(const fs::path& file, const std::vector<std::optional<BBox>>& ground_truth) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot write " + file.string());
  for (const auto& box : ground_truth) {
    if (!box) {
      out << "absent\n";
      continue;
    }
    out << format_number(box->x) << ',' << format_number(box->y) << ','
        << format_number(box->w) << ',' << format_number(box->h) << '\n';
  }
}

void write_query(const fs::path& file, const SemanticQuery& query, double fps) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot write " + file.string());
  out << "# skytrack-query format_version=" << kFormatVersion << " fps=" << format_number(fps)
      << '\n'
      << query.superset_class << '\n'
      << format_predicate(query.predicate) << '\n';
  if (!query.description.empty()) out << query.description << '\n';
}

}  // namespace skytrack::datasets
