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

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "skytrack/protocol/message.hpp"

namespace skytrack::protocol {

/// Frames larger than this are refused by the service before reading them.
inline constexpr std::size_t kMaxServedFrameBytes = 64u << 20;

using Handler = std::function<WireMessage(const WireMessage&)>;
/// Called once per accepted connection.
using HandlerFactory = std::function<Handler()>;

/// Length-prefixed message service over TCP. Each connection is served on its
/// own thread; requests on one connection are answered in order.
class Service {
 public:
  /// Binds immediately; throws Errc::kBindFailure if the port is taken.
  /// Port 0 picks an ephemeral port (see port()).
  Service(std::uint16_t port, HandlerFactory factory,
          const std::string& bind_address = "127.0.0.1");
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  std::uint16_t port() const;
  void run();    // blocks until stop()
  void start();  // runs on a background thread
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocking client holding one connection.
class TcpClient {
 public:
  /// Throws Errc::kConnectionFailure when the endpoint is unreachable.
  TcpClient(const std::string& host, std::uint16_t port);
  ~TcpClient();
  TcpClient(TcpClient&&) noexcept;
  TcpClient& operator=(TcpClient&&) noexcept;

  WireMessage exchange(const WireMessage& request);
  /// Sends one already-framed message, returns the raw framed reply.
  std::vector<std::uint8_t> exchange_raw(std::span<const std::uint8_t> frame);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Splits "host:port"; throws Errc::kInvalidArgument on malformed input.
std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& text);

}  // namespace skytrack::protocol
