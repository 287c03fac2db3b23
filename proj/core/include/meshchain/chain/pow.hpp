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

#include <cstdint>
#include <optional>
#include <span>
#include <stop_token>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "meshchain/chain/block.hpp"

namespace meshchain::chain {

/// Accumulated proof of work. 2^255 per block is possible, hence arbitrary
/// precision.
using Work = boost::multiprecision::cpp_int;

/// True iff the 256-bit big-endian value of `hash` has at least
/// `difficulty` leading zero bits.
bool meets_difficulty(const Digest& hash, unsigned difficulty);

Work block_work(unsigned difficulty);

/// Sum of 2^difficulty over the blocks; genesis (difficulty 0) counts 1.
Work cumulative_work(std::span<const Block> chain);

enum class MineStatus { mined, aborted, exhausted };

struct MineResult {
  MineStatus status = MineStatus::aborted;
  std::optional<Block> block;
  /// Hashes tried, including the successful one.
  std::uint64_t attempts = 0;
};

/// How often the stop token is polled.
inline constexpr std::uint64_t kAbortPollInterval = 1024;

/// Seals `txs` on top of `prev`, scanning nonces upward from 0. Returns
/// `aborted` promptly once `stop` is requested (including before the first
/// attempt). Throws std::invalid_argument if `txs` is empty or repeats an id.
MineResult mine_block(const Block& prev, std::vector<Transaction> txs, unsigned difficulty,
                      std::stop_token stop, std::int64_t timestamp);

/// As above, stamped with the current wall-clock time.
MineResult mine_block(const Block& prev, std::vector<Transaction> txs, unsigned difficulty,
                      std::stop_token stop = {});

std::int64_t unix_now();

}  // namespace meshchain::chain
