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

#include <gtest/gtest.h>

#include <random>

#include "meshchain/mesh/edit_script.hpp"
#include "oracles.hpp"

namespace {

using meshchain::mesh::apply_sequence;
using meshchain::mesh::DiffOptions;
using meshchain::mesh::diff_sequence;
using meshchain::mesh::EditScript;
using meshchain::mesh::ScriptError;
using Seq = std::vector<int>;

constexpr int A = 0, B = 1, C = 2, X = 9;

std::vector<std::size_t> kept_indices(std::size_t n, const EditScript<int>& s) {
  std::vector<std::size_t> kept;
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d < s.deletions.size() && s.deletions[d] == i) {
      ++d;
    } else {
      kept.push_back(i);
    }
  }
  return kept;
}

std::size_t dp_lcs(const Seq& a, const Seq& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      t[i][j] = a[i] == b[j] ? t[i + 1][j + 1] + 1 : std::max(t[i + 1][j], t[i][j + 1]);
    }
  }
  return t[0][0];
}

Seq random_seq(std::mt19937_64& rng, std::size_t max_len, int alphabet) {
  Seq s(rng() % (max_len + 1));
  for (auto& v : s) v = static_cast<int>(rng() % alphabet);
  return s;
}

TEST(EditScript, Identity) {
  const auto s = diff_sequence(Seq{A, B, C}, Seq{A, B, C});
  EXPECT_TRUE(s.empty());
}

TEST(EditScript, Substitution) {
  const auto s = diff_sequence(Seq{A, B, C}, Seq{A, X, C});
  EXPECT_EQ(s.deletions, (std::vector<std::size_t>{1}));
  ASSERT_EQ(s.insertions.size(), 1u);
  EXPECT_EQ(s.insertions[0], (std::pair<std::size_t, int>{1, X}));
}

TEST(EditScript, InsertIntoEmpty) {
  const auto s = diff_sequence(Seq{}, Seq{A});
  EXPECT_TRUE(s.deletions.empty());
  ASSERT_EQ(s.insertions.size(), 1u);
  EXPECT_EQ(s.insertions[0], (std::pair<std::size_t, int>{0, A}));
}

TEST(EditScript, KeepsEarliestMatchingBaseItems) {
  EXPECT_EQ(kept_indices(3, diff_sequence(Seq{X, A, A}, Seq{A})), (std::vector<std::size_t>{1}));
  EXPECT_EQ(kept_indices(3, diff_sequence(Seq{A, B, A}, Seq{A})), (std::vector<std::size_t>{0}));
  EXPECT_EQ(kept_indices(4, diff_sequence(Seq{A, B, B, A}, Seq{B, A})),
            (std::vector<std::size_t>{1, 3}));
}

TEST(EditScript, ApplyExamples) {
  EXPECT_EQ(apply_sequence(Seq{A, C}, EditScript<int>{}), (Seq{A, C}));
  EditScript<int> s;
  s.insertions.push_back({1, B});
  EXPECT_EQ(apply_sequence(Seq{A, C}, s), (Seq{A, B, C}));
}

TEST(EditScript, ApplyRejectsBadScripts) {
  EditScript<int> out_of_range;
  out_of_range.deletions = {3};
  EXPECT_THROW(apply_sequence(Seq{A, B, C}, out_of_range), ScriptError);

  EditScript<int> unordered;
  unordered.deletions = {1, 0};
  EXPECT_THROW(apply_sequence(Seq{A, B, C}, unordered), ScriptError);

  EditScript<int> repeated;
  repeated.deletions = {1, 1};
  EXPECT_THROW(apply_sequence(Seq{A, B, C}, repeated), ScriptError);

  EditScript<int> gap;
  gap.insertions = {{5, X}};
  EXPECT_THROW(apply_sequence(Seq{A, B, C}, gap), ScriptError);

  EditScript<int> descending;
  descending.insertions = {{1, X}, {0, X}};
  EXPECT_THROW(apply_sequence(Seq{A}, descending), ScriptError);
}

// Exhaustive over a smaller space here; the acceptance suite covers length 6.
TEST(EditScript, ExhaustiveMinimalityAndTieRuleUpToFive) {
  std::vector<Seq> all{{}};
  for (std::size_t len = 1; len <= 5; ++len) {
    const std::size_t start = all.size();
    for (std::size_t i = 0; i < start; ++i) {
      if (all[i].size() != len - 1) continue;
      for (int v = 0; v < 3; ++v) {
        Seq s = all[i];
        s.push_back(v);
        all.push_back(std::move(s));
      }
    }
  }
  for (const auto& a : all) {
    for (const auto& b : all) {
      const auto script = diff_sequence(a, b);
      const auto oracle = meshchain::testkit::subset_lcs(a, b);
      ASSERT_EQ(apply_sequence(a, script), b);
      ASSERT_EQ(script.entry_count(), a.size() + b.size() - 2 * oracle.length);
      ASSERT_EQ(kept_indices(a.size(), script), oracle.earliest_kept);
    }
  }
}

TEST(EditScript, LinearSpaceFallbackIsMinimal) {
  DiffOptions linear;
  linear.exact_tiebreak_limit = 0;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 3000; ++i) {
    const Seq a = random_seq(rng, 8, 3);
    const Seq b = random_seq(rng, 8, 3);
    const auto script = diff_sequence(a, b, linear);
    ASSERT_EQ(apply_sequence(a, script), b);
    ASSERT_EQ(script.entry_count(), meshchain::testkit::brute_force_min_script(a, b));
  }
}

TEST(EditScript, LongSequencesMatchDynamicProgramming) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    const int alphabet = 2 + static_cast<int>(rng() % 6);
    const Seq a = random_seq(rng, 400, alphabet);
    const Seq b = random_seq(rng, 400, alphabet);
    const std::size_t expected = a.size() + b.size() - 2 * dp_lcs(a, b);
    for (std::size_t limit : {std::size_t{4096}, std::size_t{0}, std::size_t{50}}) {
      DiffOptions options;
      options.exact_tiebreak_limit = limit;
      const auto script = diff_sequence(a, b, options);
      ASSERT_EQ(apply_sequence(a, script), b);
      ASSERT_EQ(script.entry_count(), expected) << "limit " << limit;
    }
  }
}

TEST(EditScript, RandomRoundtrip) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 1000; ++i) {
    const Seq a = random_seq(rng, 60, 4);
    const Seq b = random_seq(rng, 60, 4);
    EXPECT_EQ(apply_sequence(a, diff_sequence(a, b)), b);
  }
}

TEST(EditScript, Deterministic) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const Seq a = random_seq(rng, 30, 3);
    const Seq b = random_seq(rng, 30, 3);
    EXPECT_EQ(diff_sequence(a, b), diff_sequence(a, b));
  }
}

}  // namespace
