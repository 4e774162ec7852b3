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

#include "skytrack/protocol/service.hpp"

#include <memory>

#include "skytrack/core/error.hpp"

namespace skytrack::protocol {

Handler make_oracle_handler(backend::BackendConfig config, TruthLookup truth) {
  return [config = std::move(config), truth = std::move(truth)](const WireMessage& msg) -> WireMessage {
    if (const auto* ping = std::get_if<Ping>(&msg)) return Pong{ping->request_id};
    const auto* req = std::get_if<DetectRequest>(&msg);
    if (req == nullptr) {
      return ErrorReply{request_id_of(msg), "UnexpectedMessage",
                        "the back-end accepts DetectRequest and Ping only"};
    }
    Frame frame;
    frame.index = req->frame_index;
    frame.width = req->width;
    frame.height = req->height;
    frame.pixels = req->image;
    const auto persons = truth(req->frame_index, req->query);
    auto result = backend::detect(frame, req->query, persons, config);
    return DetectResponse{req->request_id, std::move(result.detections), result.timings};
  };
}

HandlerFactory make_proxy_factory(std::string host, std::uint16_t port) {
  return [host = std::move(host), port]() -> Handler {
    auto upstream = std::make_shared<std::unique_ptr<TcpClient>>();
    return [host, port, upstream](const WireMessage& msg) -> WireMessage {
      if (!*upstream) *upstream = std::make_unique<TcpClient>(host, port);
      return (*upstream)->exchange(msg);
    };
  };
}

}  // namespace skytrack::protocol
