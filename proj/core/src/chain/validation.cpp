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

#include "meshchain/chain/validation.hpp"

#include <unordered_map>

#include "meshchain/chain/pow.hpp"

namespace meshchain::chain {
namespace {

// Header hash with tx_ids replaced by ids recomputed from the bodies, so the
// hash commits to transaction content rather than to claimed ids.
Digest content_hash(const Block& block) {
  Block header;
  header.height = block.height;
  header.prev_hash = block.prev_hash;
  header.nonce = block.nonce;
  header.timestamp = block.timestamp;
  header.difficulty = block.difficulty;
  if (block.tx_ids.size() == block.transactions.size()) {
    for (const auto& tx : block.transactions) {
      try {
        header.tx_ids.push_back(tx_id(tx.parent, tx.delta, tx.author, tx.timestamp));
      } catch (const std::exception&) {
        // Unencodable author; check_transaction reports it.
        header.tx_ids.push_back(tx.id);
      }
    }
  } else {
    header.tx_ids = block.tx_ids;
  }
  return block_hash(header);
}

}  // namespace

Violations validate_block(const Block& block, const Block& prev, const TxIdSet& known_tx_ids,
                          unsigned network_difficulty) {
  Violations v;
  if (block.height != prev.height + 1) {
    v.push_back("height " + std::to_string(block.height) + " does not follow parent height " +
                std::to_string(prev.height));
  }
  if (block.prev_hash != prev.hash) {
    v.push_back("prev_hash " + block.prev_hash.short_hex() + " does not link to parent " +
                prev.hash.short_hex());
  }
  const Digest recomputed = content_hash(block);
  if (recomputed != block.hash) {
    v.push_back("hash mismatch: block content hashes to " + recomputed.short_hex() +
                ", block claims " + block.hash.short_hex());
  }
  if (!meets_difficulty(recomputed, block.difficulty)) {
    v.push_back("hash does not meet difficulty " + std::to_string(block.difficulty));
  }
  if (block.difficulty != network_difficulty) {
    v.push_back("difficulty " + std::to_string(block.difficulty) + " differs from network " +
                std::to_string(network_difficulty));
  }

  if (block.tx_ids.size() != block.transactions.size()) {
    v.push_back("tx_ids lists " + std::to_string(block.tx_ids.size()) + " ids for " +
                std::to_string(block.transactions.size()) + " transactions");
  }
  TxIdSet listed;
  for (std::size_t i = 0; i < block.tx_ids.size(); ++i) {
    if (!listed.insert(block.tx_ids[i]).second) {
      v.push_back("tx_ids repeats " + block.tx_ids[i].short_hex());
    }
    if (i < block.transactions.size() && block.transactions[i].id != block.tx_ids[i]) {
      v.push_back("tx_ids[" + std::to_string(i) + "] does not match transaction " +
                  block.transactions[i].id.short_hex());
    }
  }

  // Position of each transaction within this block, for parent ordering.
  std::unordered_map<Digest, std::size_t> position;
  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    position.emplace(block.transactions[i].id, i);
  }
  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    const auto& tx = block.transactions[i];
    for (auto& problem : check_transaction(tx)) v.push_back(std::move(problem));
    if (known_tx_ids.contains(tx.id)) {
      v.push_back("tx " + tx.id.short_hex() + " is already on this branch");
    }
    if (!tx.parent || known_tx_ids.contains(*tx.parent)) continue;
    auto it = position.find(*tx.parent);
    if (it == position.end()) {
      v.push_back("tx " + tx.id.short_hex() + " has unresolved parent " + tx.parent->short_hex());
    } else if (it->second >= i) {
      v.push_back("tx " + tx.id.short_hex() + " precedes its parent " + tx.parent->short_hex());
    }
  }
  return v;
}

Violations validate_chain(std::span<const Block> chain, unsigned network_difficulty) {
  if (chain.empty()) return {"chain is empty"};
  if (chain.front() != genesis_block()) return {"block 0 is not the genesis block"};

  Violations all;
  TxIdSet known;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto& block = chain[i];
    for (auto& problem : validate_block(block, chain[i - 1], known, network_difficulty)) {
      all.push_back("block " + std::to_string(i) + " (" + block.hash.short_hex() + "): " +
                    problem);
    }
    for (const auto& tx : block.transactions) known.insert(tx.id);
  }
  return all;
}

}  // namespace meshchain::chain
