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
#include <string_view>
#include <vector>

namespace meshchain::node {

/// "http://host:port" with trailing slashes removed, or nullopt if `url` is
/// not an http base URL.
std::optional<std::string> normalize_peer_url(std::string_view url);

/// Deduplicated peer base URLs in insertion order, never containing self.
class PeerSet {
 public:
  explicit PeerSet(std::string self_url = {}) : self_(std::move(self_url)) {}

  /// Returns false for duplicates, self, and malformed URLs.
  bool add(std::string_view url);
  bool contains(std::string_view url) const;

  /// Changing self also drops it from the set if present.
  void set_self(std::string self_url);
  const std::string& self() const { return self_; }

  const std::vector<std::string>& urls() const { return urls_; }
  std::size_t size() const { return urls_.size(); }

 private:
  std::string self_;
  std::vector<std::string> urls_;
};

}  // namespace meshchain::node
