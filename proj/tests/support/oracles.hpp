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

// Reference implementations used as test oracles. They are deliberately
// naive and share no code with the library.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace meshchain::testkit {

/// Size and lexicographically smallest index list of the largest subsets
/// of `base` that also occur as a subsequence of `target`, by enumerating
/// every subset of base. Exponential; keep |base| small.
struct SubsetLcs {
  std::size_t length = 0;
  std::vector<std::size_t> earliest_kept;
};
SubsetLcs subset_lcs(const std::vector<int>& base, const std::vector<int>& target);

/// Minimal deletions + insertions turning base into target.
std::size_t brute_force_min_script(const std::vector<int>& base, const std::vector<int>& target);

/// Leading zero bits of a lowercase hex string, one nibble at a time.
unsigned leading_zero_bits_hex(const std::string& hex);

/// Converts a decimal literal in plain positional notation (optional sign,
/// digits, optional fraction) to micro-units, rounding half away from zero
/// at the seventh fractional digit. Pure string arithmetic.
std::optional<std::int64_t> decimal_to_micros(const std::string& text);

}  // namespace meshchain::testkit
