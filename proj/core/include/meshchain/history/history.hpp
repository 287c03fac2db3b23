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

// Transaction index over the active chain, and checkout by replaying deltas
// from a root transaction. There is no mesh cache: every checkout replays
// the full ancestry. Heights are recorded so one can be added later.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "meshchain/chain/block.hpp"
#include "meshchain/mesh/mesh.hpp"

namespace meshchain::history {

using chain::Block;
using chain::Digest;
using chain::Transaction;

struct TxLocation {
  Transaction tx;
  Digest block_hash;
  std::uint64_t height = 0;
};

/// Immutable once built; nodes replace the whole index on chain changes.
class TxIndex {
 public:
  TxIndex() = default;

  const TxLocation* find(const Digest& id) const;
  bool contains(const Digest& id) const { return entries_.contains(id); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Ids in chain order (block by block, block-internal order preserved).
  const std::vector<Digest>& order() const { return order_; }

  chain::TxIdSet ids() const;

 private:
  friend TxIndex rebuild_index(std::span<const Block> chain);

  std::unordered_map<Digest, TxLocation> entries_;
  std::vector<Digest> order_;
};

/// Indexes every transaction of `chain` (assumed validated).
TxIndex rebuild_index(std::span<const Block> chain);

class HistoryError : public std::runtime_error {
 public:
  enum class Kind { unknown_tx, broken_link, delta_failure };

  HistoryError(Kind kind, Digest tx, const std::string& what)
      : std::runtime_error(what), kind_(kind), tx_(tx) {}

  Kind kind() const { return kind_; }
  /// The transaction at which the failure was detected.
  const Digest& tx() const { return tx_; }

 private:
  Kind kind_;
  Digest tx_;
};

/// Resolves an id to a transaction or nullptr.
using TxLookup = std::function<const Transaction*(const Digest&)>;

/// Root-first path ending at `tx`. Throws HistoryError.
std::vector<Transaction> ancestry_path(const TxIndex& index, const Digest& tx);
std::vector<Transaction> ancestry_path(const TxLookup& lookup, const Digest& tx);

/// Folds patch_mesh over the ancestry path starting from the empty mesh.
mesh::Mesh reconstruct_mesh(const TxIndex& index, const Digest& tx);
mesh::Mesh reconstruct_mesh(const TxLookup& lookup, const Digest& tx);

}  // namespace meshchain::history
