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

// Minimal positional edit scripts over ordered sequences.
//
// A script is a set of deletions (indices into the base, strictly
// ascending) and insertions (indices into the *result*, strictly ascending).
// Applying removes the deleted items, then places each inserted item at its
// result index. diff_sequence() always produces a script of minimal size,
// |base| + |target| - 2 * LCS(base, target).
//
// Among minimal scripts the one chosen keeps the lexicographically smallest
// list of base indices, i.e. whenever an item of the base can be kept it is
// matched as early as possible. This is computed with a backward O((N+M)D)
// pass that records, for every edit budget d, the furthest point each
// diagonal can reach from the end; a forward walk then queries that table.
// The table costs O(D^2) memory, so past `exact_tiebreak_limit` edits the
// linear-space middle-snake recursion takes over. That path is still minimal
// and deterministic but does not promise the same tie-break.

#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meshchain::mesh {

template <class T>
struct EditScript {
  std::vector<std::size_t> deletions;
  std::vector<std::pair<std::size_t, T>> insertions;

  bool empty() const { return deletions.empty() && insertions.empty(); }
  std::size_t entry_count() const { return deletions.size() + insertions.size(); }

  friend bool operator==(const EditScript&, const EditScript&) = default;
};

/// A script that does not fit the sequence it is applied to.
class ScriptError : public std::runtime_error {
 public:
  enum class Part { deletion, insertion };

  ScriptError(Part part, std::size_t position, const std::string& what)
      : std::runtime_error(what), part_(part), position_(position) {}

  Part part() const { return part_; }
  /// Offending entry within the deletions or insertions list.
  std::size_t position() const { return position_; }

 private:
  Part part_;
  std::size_t position_;
};

struct DiffOptions {
  /// Largest edit distance solved with the exact tie-break table.
  std::size_t exact_tiebreak_limit = 4096;
};

namespace detail {

/// Matched (base index, target index) pairs, strictly increasing in both.
using Alignment = std::vector<std::pair<std::size_t, std::size_t>>;

template <class Eq>
std::optional<Alignment> align_exact(std::size_t n, std::size_t m, Eq&& eq,
                                     std::size_t max_edits) {
  Alignment out;
  std::size_t prefix = 0;
  while (prefix < n && prefix < m && eq(prefix, prefix)) {
    out.emplace_back(prefix, prefix);
    ++prefix;
  }
  if (n - prefix > INT32_MAX / 2 || m - prefix > INT32_MAX / 2) return std::nullopt;

  const long width = static_cast<long>(n - prefix);
  const long height = static_cast<long>(m - prefix);
  const auto same = [&](long x, long y) {
    return eq(prefix + static_cast<std::size_t>(x), prefix + static_cast<std::size_t>(y));
  };
  const long delta = width - height;
  constexpr std::int32_t kUnreachable = INT32_MAX;

  // reach[d][i]: smallest x on diagonal (delta - d + 2i) from which the end
  // is reachable with at most d edits.
  std::vector<std::vector<std::int32_t>> reach;
  long total = 0;
  for (long d = 0;; ++d) {
    if (static_cast<std::size_t>(d) > max_edits) return std::nullopt;
    std::vector<std::int32_t> row(static_cast<std::size_t>(d) + 1, kUnreachable);
    bool at_origin = false;
    for (long i = 0; i <= d; ++i) {
      const long k = delta - d + 2 * i;
      long x = kUnreachable;
      if (d == 0) {
        x = width;
      } else {
        const auto& prev = reach[static_cast<std::size_t>(d) - 1];
        if (i <= d - 1) {  // delete a[x-1], coming from diagonal k+1
          const long xp = prev[static_cast<std::size_t>(i)];
          if (xp != kUnreachable && xp >= 1) x = std::min(x, xp - 1);
        }
        if (i >= 1) {  // insert b[y-1], coming from diagonal k-1
          const long xp = prev[static_cast<std::size_t>(i) - 1];
          if (xp != kUnreachable && xp - (k - 1) >= 1) x = std::min(x, xp);
        }
      }
      if (x == kUnreachable) continue;
      long y = x - k;
      while (x > 0 && y > 0 && same(x - 1, y - 1)) {
        --x;
        --y;
      }
      row[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(x);
      if (k == 0 && x == 0) at_origin = true;
    }
    reach.push_back(std::move(row));
    if (at_origin) {
      total = d;
      break;
    }
  }

  long x = 0;
  long y = 0;
  long budget = total;
  while (x < width || y < height) {
    if (x < width && y < height && same(x, y)) {
      out.emplace_back(prefix + static_cast<std::size_t>(x), prefix + static_cast<std::size_t>(y));
      ++x;
      ++y;
      continue;
    }
    // Prefer inserting b[y] while a[x] can still be kept by some minimal
    // script; delete a[x] only once that is impossible.
    bool insert = false;
    if (y < height && budget >= 1) {
      const long k = x - y - 1;
      const long d = budget - 1;
      const long lo = delta - d;
      if (k >= lo && k <= delta + d) {
        const auto u = reach[static_cast<std::size_t>(d)][static_cast<std::size_t>((k - lo) / 2)];
        insert = u != kUnreachable && x >= u;
      }
    }
    if (insert) {
      ++y;
    } else {
      ++x;
    }
    --budget;
  }
  return out;
}

template <class Eq>
class LinearAligner {
 public:
  LinearAligner(Eq& eq, Alignment& out) : eq_(eq), out_(out) {}

  void run(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1) {
    while (a0 < a1 && b0 < b1 && eq_(a0, b0)) {
      out_.emplace_back(a0, b0);
      ++a0;
      ++b0;
    }
    std::size_t suffix = 0;
    while (a0 < a1 - suffix && b0 < b1 - suffix && eq_(a1 - suffix - 1, b1 - suffix - 1)) {
      ++suffix;
    }
    a1 -= suffix;
    b1 -= suffix;
    if (a0 < a1 && b0 < b1) {
      const Snake s = middle_snake(a0, a1, b0, b1);
      run(a0, s.x0, b0, s.y0);
      for (std::size_t x = s.x0, y = s.y0; x < s.x1; ++x, ++y) out_.emplace_back(x, y);
      run(s.x1, a1, s.y1, b1);
    }
    for (std::size_t t = 0; t < suffix; ++t) out_.emplace_back(a1 + t, b1 + t);
  }

 private:
  struct Snake {
    std::size_t x0, y0, x1, y1;
  };

  Snake middle_snake(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1) {
    const long n = static_cast<long>(a1 - a0);
    const long m = static_cast<long>(b1 - b0);
    const long delta = n - m;
    const bool odd = (delta & 1) != 0;
    const long max_d = (n + m + 1) / 2;
    const long off = max_d + 1;
    std::vector<long> fwd(static_cast<std::size_t>(2 * max_d + 3), 0);
    std::vector<long> bwd(static_cast<std::size_t>(2 * max_d + 3), 0);
    const auto at = [off](std::vector<long>& v, long k) -> long& {
      return v[static_cast<std::size_t>(off + k)];
    };
    const auto abs_snake = [&](long x0, long y0, long x1, long y1) {
      return Snake{a0 + static_cast<std::size_t>(x0), b0 + static_cast<std::size_t>(y0),
                   a0 + static_cast<std::size_t>(x1), b0 + static_cast<std::size_t>(y1)};
    };

    for (long d = 0; d <= max_d; ++d) {
      for (long k = -d; k <= d; k += 2) {
        long x = (k == -d || (k != d && at(fwd, k - 1) < at(fwd, k + 1))) ? at(fwd, k + 1)
                                                                            : at(fwd, k - 1) + 1;
        long y = x - k;
        const long x0 = x;
        const long y0 = y;
        while (x < n && y < m &&
               eq_(a0 + static_cast<std::size_t>(x), b0 + static_cast<std::size_t>(y))) {
          ++x;
          ++y;
        }
        at(fwd, k) = x;
        if (odd && k >= delta - (d - 1) && k <= delta + (d - 1) &&
            x + at(bwd, delta - k) >= n) {
          return abs_snake(x0, y0, x, y);
        }
      }
      for (long k = -d; k <= d; k += 2) {
        long x = (k == -d || (k != d && at(bwd, k - 1) < at(bwd, k + 1))) ? at(bwd, k + 1)
                                                                            : at(bwd, k - 1) + 1;
        long y = x - k;
        const long x0 = x;
        const long y0 = y;
        while (x < n && y < m &&
               eq_(a0 + static_cast<std::size_t>(n - 1 - x),
                   b0 + static_cast<std::size_t>(m - 1 - y))) {
          ++x;
          ++y;
        }
        at(bwd, k) = x;
        if (!odd && delta - k >= -d && delta - k <= d && x + at(fwd, delta - k) >= n) {
          return abs_snake(n - x, m - y, n - x0, m - y0);
        }
      }
    }
    // Unreachable for non-empty inputs: some d <= ceil((n+m)/2) always overlaps.
    throw std::logic_error("middle snake not found");
  }

  Eq& eq_;
  Alignment& out_;
};

template <class Eq>
Alignment align(std::size_t n, std::size_t m, Eq&& eq, const DiffOptions& options) {
  if (auto exact = align_exact(n, m, eq, options.exact_tiebreak_limit)) return std::move(*exact);
  Alignment out;
  LinearAligner<std::remove_reference_t<Eq>> aligner(eq, out);
  aligner.run(0, n, 0, m);
  return out;
}

}  // namespace detail

/// Minimal edit script turning `base` into `target`.
template <class T>
EditScript<T> diff_sequence(std::span<const T> base, std::span<const T> target,
                            const DiffOptions& options = {}) {
  auto eq = [&](std::size_t i, std::size_t j) { return base[i] == target[j]; };
  const auto alignment = detail::align(base.size(), target.size(), eq, options);

  EditScript<T> script;
  std::size_t next_base = 0;
  std::size_t next_target = 0;
  for (const auto& [bi, ti] : alignment) {
    for (; next_base < bi; ++next_base) script.deletions.push_back(next_base);
    for (; next_target < ti; ++next_target) {
      script.insertions.emplace_back(next_target, target[next_target]);
    }
    next_base = bi + 1;
    next_target = ti + 1;
  }
  for (; next_base < base.size(); ++next_base) script.deletions.push_back(next_base);
  for (; next_target < target.size(); ++next_target) {
    script.insertions.emplace_back(next_target, target[next_target]);
  }
  return script;
}

template <class T>
EditScript<T> diff_sequence(const std::vector<T>& base, const std::vector<T>& target,
                            const DiffOptions& options = {}) {
  return diff_sequence(std::span<const T>(base), std::span<const T>(target), options);
}

/// Removes the deleted items, then inserts at result indices in ascending
/// order. Throws ScriptError when the script was made for a different base.
template <class T>
std::vector<T> apply_sequence(std::span<const T> base, const EditScript<T>& script) {
  for (std::size_t i = 0; i < script.deletions.size(); ++i) {
    const std::size_t index = script.deletions[i];
    if (index >= base.size()) {
      throw ScriptError(ScriptError::Part::deletion, i,
                        "deletion " + std::to_string(i) + " removes index " +
                            std::to_string(index) + " of a " + std::to_string(base.size()) +
                            "-item sequence");
    }
    if (i > 0 && index <= script.deletions[i - 1]) {
      throw ScriptError(ScriptError::Part::deletion, i,
                        "deletion " + std::to_string(i) + " is not strictly ascending");
    }
  }
  const std::size_t survivors = base.size() - script.deletions.size();
  for (std::size_t i = 0; i < script.insertions.size(); ++i) {
    const std::size_t index = script.insertions[i].first;
    if (i > 0 && index <= script.insertions[i - 1].first) {
      throw ScriptError(ScriptError::Part::insertion, i,
                        "insertion " + std::to_string(i) + " is not strictly ascending");
    }
    // Length of the sequence at the moment this insertion is made.
    if (index > survivors + i) {
      throw ScriptError(ScriptError::Part::insertion, i,
                        "insertion " + std::to_string(i) + " at index " + std::to_string(index) +
                            " is past the end of a " + std::to_string(survivors + i) +
                            "-item sequence");
    }
  }

  std::vector<T> result;
  result.reserve(survivors + script.insertions.size());
  std::size_t del = 0;
  std::size_t src = 0;
  auto next_survivor = [&]() -> const T& {
    while (del < script.deletions.size() && script.deletions[del] == src) {
      ++del;
      ++src;
    }
    return base[src++];
  };
  std::size_t ins = 0;
  const std::size_t total = survivors + script.insertions.size();
  for (std::size_t pos = 0; pos < total; ++pos) {
    if (ins < script.insertions.size() && script.insertions[ins].first == pos) {
      result.push_back(script.insertions[ins++].second);
    } else {
      result.push_back(next_survivor());
    }
  }
  return result;
}

template <class T>
std::vector<T> apply_sequence(const std::vector<T>& base, const EditScript<T>& script) {
  return apply_sequence(std::span<const T>(base), script);
}

}  // namespace meshchain::mesh
