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
#include <string>
#include <vector>

#include "meshchain/chain/digest.hpp"
#include "meshchain/chain/transaction.hpp"

namespace meshchain::chain {

inline constexpr unsigned kMaxDifficulty = 255;

/// A proof-of-work sealed batch of transactions. The header (everything but
/// the transaction bodies and the hash itself) is hashed; bodies are bound to
/// it through tx_ids.
struct Block {
  std::uint64_t height = 0;
  Digest prev_hash;
  std::vector<Digest> tx_ids;
  std::vector<Transaction> transactions;
  std::uint64_t nonce = 0;
  std::int64_t timestamp = 0;
  unsigned difficulty = 0;
  Digest hash;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Canonical JSON of {difficulty, height, nonce, prev_hash, timestamp, tx_ids}.
std::string header_preimage(const Block& block);

Digest block_hash(const Block& block);

/// The network root: height 0, zero prev_hash, no transactions, nonce 0,
/// timestamp 0, difficulty 0. Identical on every node.
const Block& genesis_block();

Json to_json(const Block& block);
/// Strict decode; does not verify hashes (see validate_block).
Block block_from_json(const Json& j, const std::string& path = "block");

Json chain_to_json(const std::vector<Block>& chain);
std::vector<Block> chain_from_json(const Json& j, const std::string& path = "blocks");

}  // namespace meshchain::chain
