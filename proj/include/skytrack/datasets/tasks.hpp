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

#include <string>
#include <string_view>
#include <vector>

#include "skytrack/core/query.hpp"

namespace skytrack::datasets {

/// A detection objective: what is asked, and which annotated persons count
/// as positives for it.
struct TaskSpec {
  std::string id;
  SemanticQuery query;
  AttributePredicate truth_predicate;

  bool is_positive(const PersonAttrs& person) const {
    return predicate_match(truth_predicate, person);
  }
};

/// The eight detection objectives: any person; gray, green and blue shirts;
/// laying down, standing and sitting; injured.
std::vector<TaskSpec> default_sard_tasks();

/// Maps an English referring expression onto an attribute predicate by
/// keyword. The text is kept verbatim as the description.
SemanticQuery parse_referring_expression(std::string_view text);

}  // namespace skytrack::datasets
