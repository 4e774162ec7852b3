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

#include "skytrack/core/query.hpp"

#include <array>
#include <utility>

#include "skytrack/core/error.hpp"

namespace skytrack {
namespace {

constexpr std::array<std::pair<Pose, std::string_view>, 7> kPoseNames{{
    {Pose::kStanding, "standing"},
    {Pose::kWalking, "walking"},
    {Pose::kRunning, "running"},
    {Pose::kLayingDown, "laying_down"},
    {Pose::kSeated, "seated"},
    {Pose::kNotDefined, "not_defined"},
    {Pose::kNull, "null"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string_view pose_name(Pose pose) {
  for (const auto& [p, name] : kPoseNames) {
    if (p == pose) return name;
  }
  return "null";
}

std::optional<Pose> parse_pose(std::string_view name) {
  for (const auto& [p, n] : kPoseNames) {
    if (n == name) return p;
  }
  return std::nullopt;
}

bool is_injury_candidate(Pose pose) {
  return pose == Pose::kLayingDown || pose == Pose::kNotDefined ||
         pose == Pose::kNull || pose == Pose::kSeated;
}

bool predicate_match(const AttributePredicate& predicate, const PersonAttrs& attrs) {
  if (predicate.pose && *predicate.pose != attrs.pose) return false;
  if (predicate.shirt_color && *predicate.shirt_color != attrs.shirt_color) return false;
  if (predicate.injured && *predicate.injured != attrs.effectively_injured()) return false;
  return true;
}

bool is_color_token(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (!((c >= 'a' && c <= 'z') || c == '_' || c == '-')) return false;
  }
  return true;
}

AttributePredicate parse_predicate(std::string_view text) {
  AttributePredicate predicate;
  text = trim(text);
  if (text.empty() || text == "none") return predicate;

  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);

    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::kSchemaViolation, "predicate item without '=': " + std::string(item));
    }
    const auto key = trim(item.substr(0, eq));
    const auto value = trim(item.substr(eq + 1));
    if (value == "any") continue;

    if (key == "pose") {
      const auto pose = parse_pose(value);
      if (!pose) throw Error(Errc::kSchemaViolation, "unknown pose: " + std::string(value));
      predicate.pose = *pose;
    } else if (key == "shirt_color") {
      if (!is_color_token(value)) {
        throw Error(Errc::kSchemaViolation, "bad shirt color: " + std::string(value));
      }
      predicate.shirt_color = std::string(value);
    } else if (key == "injured") {
      if (value == "true") {
        predicate.injured = true;
      } else if (value == "false") {
        predicate.injured = false;
      } else {
        throw Error(Errc::kSchemaViolation, "injured must be true/false: " + std::string(value));
      }
    } else {
      throw Error(Errc::kSchemaViolation, "unknown predicate key: " + std::string(key));
    }
  }
  return predicate;
}

std::string format_predicate(const AttributePredicate& predicate) {
  if (predicate.is_any()) return "none";
  std::string out;
  auto append = [&out](std::string_view item) {
    if (!out.empty()) out += ',';
    out += item;
  };
  if (predicate.pose) append("pose=" + std::string(pose_name(*predicate.pose)));
  if (predicate.shirt_color) append("shirt_color=" + *predicate.shirt_color);
  if (predicate.injured) append(*predicate.injured ? "injured=true" : "injured=false");
  return out;
}

PersonAttrs attrs_satisfying(const AttributePredicate& predicate, const BBox& box) {
  PersonAttrs attrs;
  attrs.box = box;
  if (predicate.injured && *predicate.injured) {
    attrs.injured = true;
    attrs.pose = Pose::kLayingDown;
  } else {
    attrs.pose = Pose::kStanding;
  }
  if (predicate.pose) attrs.pose = *predicate.pose;
  attrs.shirt_color = predicate.shirt_color.value_or("gray");
  return attrs;
}

}  // namespace skytrack
