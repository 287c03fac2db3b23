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

#pragma once

#include <optional>
#include <string>

namespace meshchain::node {

/// Header carrying the sender's base URL on peer-protocol requests.
inline constexpr const char* kOriginHeader = "X-Meshchain-Origin";

struct PeerResponse {
  int status = 0;
  std::string body;
};

/// Outbound side of the peer protocol. Implementations must be callable from
/// several threads at once. nullopt means the peer could not be reached.
class PeerTransport {
 public:
  virtual ~PeerTransport() = default;

  virtual std::optional<PeerResponse> post(const std::string& peer, const std::string& path,
                                           const std::string& body,
                                           const std::string& origin) = 0;
  virtual std::optional<PeerResponse> get(const std::string& peer, const std::string& path) = 0;
};

}  // namespace meshchain::node
