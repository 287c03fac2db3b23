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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace meshchain::mesh {

/// A model-space coordinate held as an exact count of millionths.
///
/// Coordinates never pass through binary floating point: text is parsed
/// digit by digit and rounded half-away-from-zero at the seventh fractional
/// digit, so every node derives the same canonical string ("-1.500000",
/// "0.000000") from the same input. Negative zero cannot be represented.
class Coord {
 public:
  static constexpr int kFractionDigits = 6;
  static constexpr std::int64_t kScale = 1'000'000;
  /// Largest accepted magnitude in whole units (keeps micros inside int64).
  static constexpr std::int64_t kMaxWholeUnits = 999'999'999'999;

  constexpr Coord() = default;

  static constexpr Coord from_micros(std::int64_t micros) {
    Coord c;
    c.micros_ = micros;
    return c;
  }

  /// Parses a decimal literal ("1", "-0.5", ".25", "1e-3", "+2.") and rounds
  /// it to six fractional digits. Returns nullopt for anything that is not a
  /// finite decimal within range.
  static std::optional<Coord> parse(std::string_view text);

  /// Accepts only the canonical form produced by to_string().
  static std::optional<Coord> parse_canonical(std::string_view text);

  constexpr std::int64_t micros() const { return micros_; }

  /// Canonical text: optional '-', integer part without leading zeros, '.',
  /// exactly six digits.
  std::string to_string() const;

  friend constexpr auto operator<=>(Coord, Coord) = default;

 private:
  std::int64_t micros_ = 0;
};

}  // namespace meshchain::mesh
