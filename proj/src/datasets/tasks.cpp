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

#include "skytrack/datasets/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace skytrack::datasets {
namespace {

TaskSpec make_task(std::string id, std::string description, AttributePredicate predicate) {
  TaskSpec t;
  t.id = std::move(id);
  t.query.superset_class = "person";
  t.query.description = std::move(description);
  t.query.predicate = predicate;
  t.truth_predicate = predicate;
  return t;
}

AttributePredicate with_shirt(std::string color) {
  AttributePredicate p;
  p.shirt_color = std::move(color);
  return p;
}

AttributePredicate with_pose(Pose pose) {
  AttributePredicate p;
  p.pose = pose;
  return p;
}

std::vector<std::string> words(std::string_view text) {
  std::string lowered;
  lowered.reserve(text.size());
  for (const char c : text) {
    const auto u = static_cast<unsigned char>(c);
    lowered.push_back(std::isalpha(u) ? static_cast<char>(std::tolower(u)) : ' ');
  }
  std::istringstream in(lowered);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(std::move(w));
  return out;
}

bool has(const std::vector<std::string>& ws, std::string_view w) {
  return std::find(ws.begin(), ws.end(), w) != ws.end();
}

bool has_pair(const std::vector<std::string>& ws, std::string_view a, std::string_view b) {
  for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
    if (ws[i] == a && ws[i + 1] == b) return true;
  }
  return false;
}

}  // namespace

std::vector<TaskSpec> default_sard_tasks() {
  AttributePredicate injured;
  injured.injured = true;
  return {
      make_task("person", "Find any person.", {}),
      make_task("shirt_gray", "Find any person wearing a gray shirt.", with_shirt("gray")),
      make_task("shirt_green", "Find any person wearing a green shirt.", with_shirt("green")),
      make_task("shirt_blue", "Find any person wearing a blue shirt.", with_shirt("blue")),
      make_task("laying_down", "Find any person laying down.", with_pose(Pose::kLayingDown)),
      make_task("standing", "Find any person standing.", with_pose(Pose::kStanding)),
      make_task("sitting", "Find any person sitting.", with_pose(Pose::kSeated)),
      make_task("injured", "Find any person who is injured.", injured),
  };
}

SemanticQuery parse_referring_expression(std::string_view text) {
  SemanticQuery q;
  q.description = std::string(text);
  const auto ws = words(text);

  for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
    if (ws[i + 1] == "shirt" || ws[i + 1] == "shirts" || ws[i + 1] == "top" ||
        ws[i + 1] == "jacket") {
      if (is_color_token(ws[i]) && ws[i] != "a" && ws[i] != "the") {
        q.predicate.shirt_color = ws[i] == "grey" ? "gray" : ws[i];
      }
    }
  }

  if (has_pair(ws, "laying", "down") || has_pair(ws, "lying", "down") || has(ws, "lying") ||
      has(ws, "laying")) {
    q.predicate.pose = Pose::kLayingDown;
  } else if (has(ws, "sitting") || has(ws, "seated")) {
    q.predicate.pose = Pose::kSeated;
  } else if (has(ws, "standing")) {
    q.predicate.pose = Pose::kStanding;
  } else if (has(ws, "walking")) {
    q.predicate.pose = Pose::kWalking;
  } else if (has(ws, "running")) {
    q.predicate.pose = Pose::kRunning;
  }

  if (has(ws, "injured") || has(ws, "hurt") || has(ws, "wounded") ||
      has_pair(ws, "needs", "help") || has_pair(ws, "need", "help")) {
    q.predicate.injured = true;
  }
  return q;
}

}  // namespace skytrack::datasets
