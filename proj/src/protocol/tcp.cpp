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

#include "skytrack/protocol/tcp.hpp"

#include <boost/asio.hpp>
#include <list>
#include <mutex>
#include <thread>

#include "skytrack/core/error.hpp"
#include "skytrack/protocol/codec.hpp"

namespace skytrack::protocol {

namespace asio = boost::asio;
using asio::ip::tcp;

namespace {

std::uint32_t prefix_value(const std::array<std::uint8_t, 4>& p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

// Reads one framed message (prefix + payload); false on orderly EOF.
bool read_frame(tcp::socket& socket, std::vector<std::uint8_t>& frame, std::size_t limit) {
  std::array<std::uint8_t, 4> prefix{};
  boost::system::error_code ec;
  asio::read(socket, asio::buffer(prefix), ec);
  if (ec == asio::error::eof) return false;
  if (ec) throw boost::system::system_error(ec);
  const std::size_t n = prefix_value(prefix);
  if (n > limit) throw Error(Errc::kBadFrame, "frame of " + std::to_string(n) + " bytes exceeds limit");
  frame.assign(prefix.begin(), prefix.end());
  frame.resize(4 + n);
  asio::read(socket, asio::buffer(frame.data() + 4, n));
  return true;
}

WireMessage dispatch(const Handler& handler, const std::vector<std::uint8_t>& frame) {
  WireMessage request;
  try {
    request = decode(frame);
  } catch (const Error& e) {
    return ErrorReply{0, std::string(errc_name(e.code())), e.what()};
  }
  try {
    return handler(request);
  } catch (const Error& e) {
    return ErrorReply{request_id_of(request), std::string(errc_name(e.code())), e.what()};
  } catch (const std::exception& e) {
    return ErrorReply{request_id_of(request), "Internal", e.what()};
  }
}

}  // namespace

struct Service::Impl {
  asio::io_context io;
  tcp::acceptor acceptor{io};
  HandlerFactory factory;
  std::thread runner;
  std::mutex mu;
  std::list<std::pair<std::shared_ptr<tcp::socket>, std::thread>> connections;
  bool stopped = false;

  void serve_connection(std::shared_ptr<tcp::socket> socket) {
    Handler handler = factory();
    std::vector<std::uint8_t> frame;
    try {
      while (read_frame(*socket, frame, kMaxServedFrameBytes)) {
        const auto reply = encode(dispatch(handler, frame));
        asio::write(*socket, asio::buffer(reply));
      }
    } catch (const Error& e) {
      boost::system::error_code ignored;
      const auto reply = encode(ErrorReply{0, std::string(errc_name(e.code())), e.what()});
      asio::write(*socket, asio::buffer(reply), ignored);
    } catch (const std::exception&) {
      // Peer went away mid-frame; nothing left to answer.
    }
    boost::system::error_code ignored;
    socket->shutdown(tcp::socket::shutdown_both, ignored);
  }

  void accept_next() {
    auto socket = std::make_shared<tcp::socket>(io);
    acceptor.async_accept(*socket, [this, socket](const boost::system::error_code& ec) {
      if (ec) return;  // acceptor closed
      std::lock_guard lock(mu);
      if (stopped) return;
      connections.emplace_back(socket, std::thread([this, socket] { serve_connection(socket); }));
      accept_next();
    });
  }
};

Service::Service(std::uint16_t port, HandlerFactory factory, const std::string& bind_address)
    : impl_(std::make_unique<Impl>()) {
  impl_->factory = std::move(factory);
  try {
    const tcp::endpoint endpoint(asio::ip::make_address(bind_address), port);
    impl_->acceptor.open(endpoint.protocol());
    impl_->acceptor.bind(endpoint);
    impl_->acceptor.listen();
  } catch (const boost::system::system_error& e) {
    throw Error(Errc::kBindFailure,
                "cannot bind " + bind_address + ":" + std::to_string(port) + ": " + e.what());
  }
  impl_->accept_next();
}

Service::~Service() { stop(); }

std::uint16_t Service::port() const { return impl_->acceptor.local_endpoint().port(); }

void Service::run() { impl_->io.run(); }

void Service::start() {
  impl_->runner = std::thread([this] { impl_->io.run(); });
}

void Service::stop() {
  {
    std::lock_guard lock(impl_->mu);
    if (impl_->stopped) return;
    impl_->stopped = true;
  }
  asio::post(impl_->io, [this] {
    boost::system::error_code ignored;
    impl_->acceptor.close(ignored);
  });
  impl_->io.stop();
  if (impl_->runner.joinable()) impl_->runner.join();
  std::list<std::pair<std::shared_ptr<tcp::socket>, std::thread>> connections;
  {
    std::lock_guard lock(impl_->mu);
    connections.swap(impl_->connections);
  }
  for (auto& [socket, thread] : connections) {
    boost::system::error_code ignored;
    socket->shutdown(tcp::socket::shutdown_both, ignored);
    if (thread.joinable()) thread.join();
  }
}

struct TcpClient::Impl {
  asio::io_context io;
  tcp::socket socket{io};
};

TcpClient::TcpClient(const std::string& host, std::uint16_t port)
    : impl_(std::make_unique<Impl>()) {
  try {
    tcp::resolver resolver(impl_->io);
    asio::connect(impl_->socket, resolver.resolve(host, std::to_string(port)));
    impl_->socket.set_option(tcp::no_delay(true));
  } catch (const boost::system::system_error& e) {
    throw Error(Errc::kConnectionFailure,
                "cannot connect to " + host + ":" + std::to_string(port) + ": " + e.what());
  }
}

TcpClient::~TcpClient() = default;
TcpClient::TcpClient(TcpClient&&) noexcept = default;
TcpClient& TcpClient::operator=(TcpClient&&) noexcept = default;

std::vector<std::uint8_t> TcpClient::exchange_raw(std::span<const std::uint8_t> frame) {
  try {
    asio::write(impl_->socket, asio::buffer(frame.data(), frame.size()));
    std::vector<std::uint8_t> reply;
    if (!read_frame(impl_->socket, reply, kMaxPayloadBytes)) {
      throw Error(Errc::kConnectionFailure, "connection closed before a reply arrived");
    }
    return reply;
  } catch (const boost::system::system_error& e) {
    throw Error(Errc::kConnectionFailure, e.what());
  }
}

WireMessage TcpClient::exchange(const WireMessage& request) {
  return decode(exchange_raw(encode(request)));
}

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw Error(Errc::kInvalidArgument, "expected host:port, got '" + text + "'");
  }
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw Error(Errc::kInvalidArgument, "bad port in '" + text + "'");
  }
  if (port <= 0 || port > 65535) throw Error(Errc::kInvalidArgument, "port out of range");
  return {text.substr(0, colon), static_cast<std::uint16_t>(port)};
}

}  // namespace skytrack::protocol
