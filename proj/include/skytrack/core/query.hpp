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

#include <optional>
#include <string>
#include <string_view>

#include "skytrack/core/geometry.hpp"

namespace skytrack {

enum class Pose {
  kStanding,
  kWalking,
  kRunning,
  kLayingDown,
  kSeated,
  kNotDefined,
  kNull,
};

std::string_view pose_name(Pose pose);
std::optional<Pose> parse_pose(std::string_view name);

/// Poses whose instances are candidates for the "injured" label.
bool is_injury_candidate(Pose pose);

/// Annotated person: the ground truth the oracle detector answers from.
struct PersonAttrs {
  BBox box;
  Pose pose = Pose::kNull;
  std::string shirt_color;
  bool injured = false;

  /// Injury as the oracle sees it: labelled injured and in a candidate pose.
  bool effectively_injured() const { return injured && is_injury_candidate(pose); }

  friend bool operator==(const PersonAttrs&, const PersonAttrs&) = default;
};

/// Conjunction of attribute equalities; an absent key matches anything.
struct AttributePredicate {
  std::optional<Pose> pose;
  std::optional<std::string> shirt_color;
  std::optional<bool> injured;

  bool is_any() const { return !pose && !shirt_color && !injured; }
  std::size_t constraint_count() const {
    return (pose ? 1 : 0) + (shirt_color ? 1 : 0) + (injured ? 1 : 0);
  }
  friend bool operator==(const AttributePredicate&, const AttributePredicate&) = default;
};

bool predicate_match(const AttributePredicate& predicate, const PersonAttrs& attrs);

/// "pose=seated,shirt_color=blue,injured=true" or "none". Throws
/// Errc::kSchemaViolation on unknown keys or values.
AttributePredicate parse_predicate(std::string_view text);
std::string format_predicate(const AttributePredicate& predicate);

/// Attributes for a target at `box` that satisfy `predicate`. Used when a
/// ground-truth track carries no person annotation of its own.
PersonAttrs attrs_satisfying(const AttributePredicate& predicate, const BBox& box);

/// What the front-end asks the back-end to find.
struct SemanticQuery {
  std::string superset_class = "person";
  AttributePredicate predicate;
  std::string description;
  std::string system_prompt;  // forwarded to external back-ends only

  friend bool operator==(const SemanticQuery&, const SemanticQuery&) = default;
};

/// Shirt colors are an open vocabulary of lowercase tokens.
bool is_color_token(std::string_view token);

}  // namespace skytrack
