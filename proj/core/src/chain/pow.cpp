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

#include "meshchain/chain/pow.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>

namespace meshchain::chain {

bool meets_difficulty(const Digest& hash, unsigned difficulty) {
  if (difficulty > kMaxDifficulty) return false;
  const auto& bytes = hash.bytes();
  unsigned full = difficulty / 8;
  for (unsigned i = 0; i < full; ++i) {
    if (bytes[i] != 0) return false;
  }
  const unsigned rest = difficulty % 8;
  if (rest == 0) return true;
  return (bytes[full] >> (8 - rest)) == 0;
}

Work block_work(unsigned difficulty) { return Work(1) << difficulty; }

Work cumulative_work(std::span<const Block> chain) {
  Work total = 0;
  for (const auto& b : chain) total += block_work(b.difficulty);
  return total;
}

std::int64_t unix_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

MineResult mine_block(const Block& prev, std::vector<Transaction> txs, unsigned difficulty,
                      std::stop_token stop, std::int64_t timestamp) {
  if (txs.empty()) throw std::invalid_argument("mine_block: no transactions");
  if (difficulty > kMaxDifficulty) throw std::invalid_argument("mine_block: difficulty above 255");
  TxIdSet seen;
  for (const auto& tx : txs) {
    if (!seen.insert(tx.id).second) {
      throw std::invalid_argument("mine_block: duplicate transaction " + tx.id.hex());
    }
  }

  Block block;
  block.height = prev.height + 1;
  block.prev_hash = prev.hash;
  block.timestamp = timestamp;
  block.difficulty = difficulty;
  for (const auto& tx : txs) block.tx_ids.push_back(tx.id);
  block.transactions = std::move(txs);

  MineResult result;
  if (stop.stop_requested()) return result;

  // Keys are sorted and no value can contain the text `"nonce":0`, so the
  // preimage splits cleanly around the nonce digits.
  block.nonce = 0;
  const std::string templ = header_preimage(block);
  const std::string marker = "\"nonce\":";
  const auto at = templ.find(marker + "0,");
  const std::string prefix = templ.substr(0, at + marker.size());
  const std::string suffix = templ.substr(at + marker.size() + 1);

  std::string preimage;
  for (std::uint64_t nonce = 0;; ++nonce) {
    if (nonce % kAbortPollInterval == 0 && nonce != 0 && stop.stop_requested()) {
      return result;
    }
    preimage.assign(prefix);
    preimage += std::to_string(nonce);
    preimage += suffix;
    const Digest hash = sha256(preimage);
    ++result.attempts;
    if (meets_difficulty(hash, difficulty)) {
      block.nonce = nonce;
      block.hash = hash;
      result.status = MineStatus::mined;
      result.block = std::move(block);
      return result;
    }
    if (nonce == std::numeric_limits<std::uint64_t>::max()) {
      result.status = MineStatus::exhausted;
      return result;
    }
  }
}

MineResult mine_block(const Block& prev, std::vector<Transaction> txs, unsigned difficulty,
                      std::stop_token stop) {
  return mine_block(prev, std::move(txs), difficulty, std::move(stop), unix_now());
}

}  // namespace meshchain::chain
