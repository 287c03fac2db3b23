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

#include "oracles.hpp"

#include <algorithm>

namespace meshchain::testkit {

namespace {

bool is_subsequence(const std::vector<int>& needle, const std::vector<int>& hay) {
  std::size_t j = 0;
  for (int v : hay) {
    if (j < needle.size() && needle[j] == v) ++j;
  }
  return j == needle.size();
}

}  // namespace

SubsetLcs subset_lcs(const std::vector<int>& base, const std::vector<int>& target) {
  SubsetLcs best;
  bool have = false;
  const std::size_t n = base.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> kept;
    std::vector<int> values;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        kept.push_back(i);
        values.push_back(base[i]);
      }
    }
    if (!is_subsequence(values, target)) continue;
    if (!have || kept.size() > best.length ||
        (kept.size() == best.length && kept < best.earliest_kept)) {
      best.length = kept.size();
      best.earliest_kept = std::move(kept);
      have = true;
    }
  }
  return best;
}

std::size_t brute_force_min_script(const std::vector<int>& base, const std::vector<int>& target) {
  return base.size() + target.size() - 2 * subset_lcs(base, target).length;
}

unsigned leading_zero_bits_hex(const std::string& hex) {
  unsigned bits = 0;
  for (char c : hex) {
    const int v = (c >= '0' && c <= '9') ? c - '0' : c - 'a' + 10;
    if (v == 0) {
      bits += 4;
      continue;
    }
    for (int mask = 8; mask > 0 && !(v & mask); mask >>= 1) ++bits;
    break;
  }
  return bits;
}

std::optional<std::int64_t> decimal_to_micros(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  std::string whole;
  std::string frac;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') whole += text[pos++];
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') frac += text[pos++];
  }
  if (pos != text.size() || (whole.empty() && frac.empty())) return std::nullopt;
  if (whole.empty()) whole = "0";
  while (frac.size() < 7) frac += '0';
  std::int64_t micros = std::stoll(whole) * 1000000 + std::stoll(frac.substr(0, 6));
  if (frac[6] >= '5') ++micros;
  return negative ? -micros : micros;
}

}  // namespace meshchain::testkit
