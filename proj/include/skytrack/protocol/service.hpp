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

#include <functional>
#include <string>
#include <vector>

#include "skytrack/backend/oracle.hpp"
#include "skytrack/protocol/tcp.hpp"

namespace skytrack::protocol {

/// Ground truth for the frame a request refers to. The query is passed along
/// for sources (tracking sequences) that synthesize attributes from it.
using TruthLookup =
    std::function<std::vector<PersonAttrs>(int frame_index, const SemanticQuery& query)>;

/// Answers DetectRequest with the oracle back-end and Ping with Pong.
/// Anything else gets an ErrorReply; the handler is stateless and reentrant.
Handler make_oracle_handler(backend::BackendConfig config, TruthLookup truth);

/// Relays every message to a remote back-end (e.g. a model bridge), one
/// upstream connection per downstream connection.
HandlerFactory make_proxy_factory(std::string host, std::uint16_t port);

}  // namespace skytrack::protocol
