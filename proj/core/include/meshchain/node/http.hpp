// Copyright 2026 The meshchain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP binding of a Node: the modeling-tool API under /api, the peer protocol
// under /p2p and optional static files at /. Also the matching clients.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

#include "meshchain/mesh/codec.hpp"
#include "meshchain/node/node.hpp"
#include "meshchain/node/transport.hpp"

namespace meshchain::node {

struct HttpOptions {
  std::string host = "127.0.0.1";
  /// 0 picks a free port.
  std::uint16_t port = 0;
  /// Directory served at "/"; empty disables static files.
  std::filesystem::path web_root;
};

class HttpService {
 public:
  HttpService(Node& node, HttpOptions options);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds and starts serving on a background thread. Throws
  /// std::runtime_error if the port cannot be bound.
  void start();
  void stop();

  std::uint16_t port() const { return port_; }
  std::string base_url() const;

 private:
  struct Impl;

  Node& node_;
  HttpOptions options_;
  std::unique_ptr<Impl> impl_;
  std::uint16_t port_ = 0;
  std::thread thread_;
};

/// PeerTransport over plain HTTP with short timeouts.
class HttpTransport final : public PeerTransport {
 public:
  explicit HttpTransport(std::chrono::milliseconds timeout = std::chrono::milliseconds(2000))
      : timeout_(timeout) {}

  std::optional<PeerResponse> post(const std::string& peer, const std::string& path,
                                   const std::string& body, const std::string& origin) override;
  std::optional<PeerResponse> get(const std::string& peer, const std::string& path) override;

 private:
  std::chrono::milliseconds timeout_;
};

class ApiError : public std::runtime_error {
 public:
  ApiError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  /// HTTP status, or 0 if the node was unreachable.
  int status() const { return status_; }

 private:
  int status_;
};

/// Client for the /api endpoints; throws ApiError carrying the node's error text.
class ApiClient {
 public:
  explicit ApiClient(std::string base_url,
                     std::chrono::milliseconds timeout = std::chrono::seconds(120));

  Json get(const std::string& path) const;
  Json post(const std::string& path, const Json& body) const;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace meshchain::node
