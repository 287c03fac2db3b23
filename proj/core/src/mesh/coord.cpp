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

#include "meshchain/mesh/coord.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

namespace meshchain::mesh {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::optional<Coord> Coord::parse(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }

  // All significant digits in order, plus where the decimal point sits
  // relative to them.
  std::string digits;
  long point = -1;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (is_digit(c)) {
      digits.push_back(c);
      any_digit = true;
    } else if (c == '.' && point < 0) {
      point = static_cast<long>(digits.size());
    } else {
      break;
    }
  }
  if (!any_digit) return std::nullopt;
  if (point < 0) point = static_cast<long>(digits.size());

  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !is_digit(text[pos])) return std::nullopt;
    long exponent = 0;
    for (; pos < text.size() && is_digit(text[pos]); ++pos) {
      // Saturate: anything past a few hundred places is out of range or zero.
      if (exponent < 100'000) exponent = exponent * 10 + (text[pos] - '0');
    }
    point += exp_negative ? -exponent : exponent;
  }
  if (pos != text.size()) return std::nullopt;

  // Digit at decimal position i (0 = first integer digit when point == 0).
  const auto digit_at = [&](long i) -> int {
    if (i < 0 || i >= static_cast<long>(digits.size())) return 0;
    return digits[static_cast<std::size_t>(i)] - '0';
  };

  // Whole part: digits [0, point). Reject anything beyond kMaxWholeUnits.
  std::int64_t whole = 0;
  for (long i = 0; i < point; ++i) {
    const int d = digit_at(i);
    if (whole == 0 && d == 0) continue;
    if (whole > kMaxWholeUnits / 10) return std::nullopt;
    whole = whole * 10 + d;
    if (whole > kMaxWholeUnits) return std::nullopt;
  }
  std::int64_t fraction = 0;
  for (long i = point; i < point + kFractionDigits; ++i) {
    fraction = fraction * 10 + digit_at(i);
  }
  std::int64_t micros = whole * kScale + fraction;
  // Half away from zero: the remainder is >= one half exactly when its
  // leading digit is >= 5.
  if (digit_at(point + kFractionDigits) >= 5) ++micros;
  if (micros > (kMaxWholeUnits + 1) * kScale) return std::nullopt;
  return from_micros(negative ? -micros : micros);
}

std::optional<Coord> Coord::parse_canonical(std::string_view text) {
  auto parsed = parse(text);
  if (!parsed || parsed->to_string() != text) return std::nullopt;
  return parsed;
}

std::string Coord::to_string() const {
  const std::uint64_t magnitude = micros_ < 0
                                      ? static_cast<std::uint64_t>(-(micros_ + 1)) + 1
                                      : static_cast<std::uint64_t>(micros_);
  std::string fraction = std::to_string(magnitude % kScale);
  fraction.insert(0, kFractionDigits - fraction.size(), '0');
  std::string out;
  if (micros_ < 0) out.push_back('-');
  out += std::to_string(magnitude / kScale);
  out.push_back('.');
  out += fraction;
  return out;
}

}  // namespace meshchain::mesh
