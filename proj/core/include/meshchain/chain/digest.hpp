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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace meshchain::chain {

/// A SHA-256 value. Printed and transmitted as 64 lowercase hex characters.
class Digest {
 public:
  static constexpr std::size_t kSize = 32;
  using Bytes = std::array<std::uint8_t, kSize>;

  constexpr Digest() = default;
  explicit constexpr Digest(const Bytes& bytes) : bytes_(bytes) {}

  /// Accepts exactly 64 lowercase hex characters.
  static std::optional<Digest> from_hex(std::string_view hex);

  const Bytes& bytes() const { return bytes_; }
  std::string hex() const;
  /// First `n` hex characters, for logs.
  std::string short_hex(std::size_t n = 12) const { return hex().substr(0, n); }

  friend constexpr auto operator<=>(const Digest&, const Digest&) = default;

 private:
  Bytes bytes_{};
};

Digest sha256(std::string_view data);

struct DigestHash {
  std::size_t operator()(const Digest& d) const noexcept {
    std::size_t h = 0;
    for (std::size_t i = 0; i < sizeof(std::size_t); ++i) h = (h << 8) | d.bytes()[i];
    return h;
  }
};

}  // namespace meshchain::chain

template <>
struct std::hash<meshchain::chain::Digest> : meshchain::chain::DigestHash {};
