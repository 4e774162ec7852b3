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

#include "skytrack/datasets/sard.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skytrack/core/error.hpp"

namespace skytrack::datasets {
namespace {

using nlohmann::json;

[[noreturn]] void violation(const std::string& path, const std::string& what) {
  throw Error(Errc::kSchemaViolation, path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) violation(path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) violation(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) violation(path, "not finite");
  return d;
}

std::optional<int> dimension(const json& img, const char* key, const std::string& path) {
  const auto it = img.find(key);
  if (it == img.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer() || it->get<long long>() <= 0 || it->get<long long>() > 1 << 20) {
    violation(path + "." + key, "expected a positive integer");
  }
  return static_cast<int>(it->get<long long>());
}

PersonAttrs parse_person(const json& p, const std::string& path, const SardImage& img,
                         Strictness strictness, std::vector<std::string>& warnings) {
  if (!p.is_object()) violation(path, "expected an object");
  PersonAttrs attrs;

  const auto& box = field(p, "box", path);
  const std::string box_path = path + ".box";
  if (!box.is_array() || box.size() != 4) violation(box_path, "expected [x, y, w, h]");
  attrs.box = {number(box[0], box_path + "[0]"), number(box[1], box_path + "[1]"),
               number(box[2], box_path + "[2]"), number(box[3], box_path + "[3]")};
  if (!(attrs.box.w > 0.0) || !(attrs.box.h > 0.0)) violation(box_path, "width and height must be positive");
  if (img.width && img.height &&
      (attrs.box.x < 0.0 || attrs.box.y < 0.0 || attrs.box.right() > *img.width ||
       attrs.box.bottom() > *img.height)) {
    violation(box_path, "box exceeds image bounds");
  }

  const auto& pose = field(p, "pose", path);
  if (pose.is_null()) {
    attrs.pose = Pose::kNull;
  } else if (!pose.is_string()) {
    violation(path + ".pose", "expected a string");
  } else if (const auto parsed = parse_pose(pose.get<std::string>())) {
    attrs.pose = *parsed;
  } else {
    violation(path + ".pose", "unknown pose '" + pose.get<std::string>() + "'");
  }

  const auto& shirt = field(p, "shirt_color", path);
  if (!shirt.is_string() || !is_color_token(shirt.get<std::string>())) {
    violation(path + ".shirt_color", "expected a lowercase color token");
  }
  attrs.shirt_color = shirt.get<std::string>();

  const auto& injured = field(p, "injured", path);
  if (!injured.is_boolean()) violation(path + ".injured", "expected a boolean");
  attrs.injured = injured.get<bool>();

  if (attrs.injured && !is_injury_candidate(attrs.pose)) {
    const std::string msg = "injured person with pose '" + std::string(pose_name(attrs.pose)) +
                            "' outside the injury-candidate poses";
    if (strictness == Strictness::kStrict) violation(path + ".injured", msg);
    warnings.push_back(path + ".injured: " + msg);
  }
  return attrs;
}

}  // namespace

SardAnnotations parse_sard_annotations(std::string_view json_text, Strictness strictness) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    violation("$", std::string("invalid JSON: ") + e.what());
  }

  const json* images = &root;
  std::string prefix = "$";
  if (root.is_object()) {
    const auto& version = field(root, "format_version", "$");
    if (!version.is_number_integer() || version.get<long long>() != kSardFormatVersion) {
      violation("$.format_version", "unsupported format version");
    }
    images = &field(root, "images", "$");
    prefix = "$.images";
  }
  if (!images->is_array()) violation(prefix, "expected an array of images");

  SardAnnotations out;
  out.images.reserve(images->size());
  for (std::size_t i = 0; i < images->size(); ++i) {
    const auto& img = (*images)[i];
    const std::string path = prefix + "[" + std::to_string(i) + "]";
    if (!img.is_object()) violation(path, "expected an object");
    SardImage parsed;
    const auto& name = field(img, "image", path);
    if (!name.is_string() || name.get<std::string>().empty()) {
      violation(path + ".image", "expected a nonempty string");
    }
    parsed.image = name.get<std::string>();
    parsed.width = dimension(img, "width", path);
    parsed.height = dimension(img, "height", path);
    const auto& persons = field(img, "persons", path);
    if (!persons.is_array()) violation(path + ".persons", "expected an array");
    for (std::size_t k = 0; k < persons.size(); ++k) {
      parsed.persons.push_back(parse_person(persons[k], path + ".persons[" + std::to_string(k) + "]",
                                            parsed, strictness, out.warnings));
    }
    out.images.push_back(std::move(parsed));
  }
  return out;
}

SardAnnotations load_sard_annotations(const std::filesystem::path& file, Strictness strictness) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::kMissingFile, "cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sard_annotations(ss.str(), strictness);
}

std::string format_sard_annotations(const std::vector<SardImage>& images) {
  json list = json::array();
  for (const auto& img : images) {
    json persons = json::array();
    for (const auto& p : img.persons) {
      persons.push_back({{"box", {p.box.x, p.box.y, p.box.w, p.box.h}},
                         {"pose", std::string(pose_name(p.pose))},
                         {"shirt_color", p.shirt_color},
                         {"injured", p.injured}});
    }
    json entry = {{"image", img.image}, {"persons", std::move(persons)}};
    if (img.width) entry["width"] = *img.width;
    if (img.height) entry["height"] = *img.height;
    list.push_back(std::move(entry));
  }
  json root = {{"format_version", kSardFormatVersion}, {"images", std::move(list)}};
  return root.dump(2) + "\n";
}

void write_sard_annotations(const std::filesystem::path& file, const std::vector<SardImage>& images) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot write " + file.string());
  out << format_sard_annotations(images);
}

}  // namespace skytrack::datasets
