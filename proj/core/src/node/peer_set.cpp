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

#include "meshchain/node/peer_set.hpp"

#include <algorithm>
#include <charconv>

namespace meshchain::node {

std::optional<std::string> normalize_peer_url(std::string_view url) {
  constexpr std::string_view scheme = "http://";
  if (!url.starts_with(scheme)) return std::nullopt;
  while (url.ends_with('/')) url.remove_suffix(1);
  const std::string_view authority = url.substr(scheme.size());
  if (authority.empty() || authority.find('/') != std::string_view::npos) return std::nullopt;
  const auto colon = authority.rfind(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  const std::string_view port = authority.substr(colon + 1);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || value == 0 || value > 65535) {
    return std::nullopt;
  }
  return std::string(url);
}

bool PeerSet::add(std::string_view url) {
  auto normalized = normalize_peer_url(url);
  if (!normalized || *normalized == self_ || contains(*normalized)) return false;
  urls_.push_back(std::move(*normalized));
  return true;
}

bool PeerSet::contains(std::string_view url) const {
  auto normalized = normalize_peer_url(url);
  if (!normalized) return false;
  return std::find(urls_.begin(), urls_.end(), *normalized) != urls_.end();
}

void PeerSet::set_self(std::string self_url) {
  self_ = normalize_peer_url(self_url).value_or(std::move(self_url));
  std::erase(urls_, self_);
}

}  // namespace meshchain::node
