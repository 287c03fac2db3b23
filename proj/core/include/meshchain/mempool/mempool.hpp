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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "meshchain/chain/transaction.hpp"

namespace meshchain::mempool {

using chain::Digest;
using chain::Transaction;

enum class AdmitStatus { admitted, duplicate, orphaned, invalid };

const char* to_string(AdmitStatus status);

struct AdmitResult {
  AdmitStatus status = AdmitStatus::invalid;
  /// Why the transaction was rejected, for `invalid`.
  std::string reason;
  /// Orphans admitted as a consequence, parents before children.
  std::vector<Digest> promoted;
};

/// Answers "is this transaction id on the active chain?".
using ChainContains = std::function<bool(const Digest&)>;

/// Validated transactions waiting for a block, in arrival order, plus a
/// bounded buffer of transactions whose parent has not been seen yet.
///
/// Invariants after every call: no id is both pooled and on the chain; every
/// pooled transaction's parent is none, on the chain, or pooled earlier; ids
/// are unique across pool and orphan buffer. Not thread-safe; the node
/// serializes access.
class Mempool {
 public:
  static constexpr std::size_t kDefaultOrphanCap = 1024;

  explicit Mempool(std::size_t orphan_cap = kDefaultOrphanCap) : orphan_cap_(orphan_cap) {}

  AdmitResult admit(const Transaction& tx, const ChainContains& in_chain);

  /// Pooled transactions in arrival order, moved as needed so that parents
  /// precede children; nullopt when the pool is empty. Orphans are never
  /// included. The pool itself is not modified.
  std::optional<std::vector<Transaction>> take_all() const;

  /// Drops everything now on the chain, demotes transactions whose parent
  /// vanished (after a reorg) to the orphan buffer, then promotes orphans
  /// whose parent became known. Returns the number of chain-evicted entries.
  std::size_t reconcile(const ChainContains& in_chain);

  const Transaction* find(const Digest& id) const;
  bool contains(const Digest& id) const { return pool_.contains(id); }
  bool is_orphan(const Digest& id) const { return orphans_.contains(id); }

  /// Most recently admitted transaction.
  const Transaction* latest() const;

  std::vector<Transaction> transactions() const;
  std::vector<Transaction> orphans() const;

  std::size_t size() const { return pool_.size(); }
  std::size_t orphan_count() const { return orphans_.size(); }
  bool empty() const { return pool_.empty(); }

 private:
  struct Entry {
    Transaction tx;
    std::uint64_t seq = 0;
  };

  void insert_pooled(const Transaction& tx);
  void insert_orphan(const Transaction& tx);
  void erase_orphan(const Digest& id);
  std::vector<Digest> promote_children(const Digest& parent, const ChainContains& in_chain);

  std::size_t orphan_cap_;
  std::uint64_t next_seq_ = 0;

  std::unordered_map<Digest, Entry> pool_;
  std::map<std::uint64_t, Digest> pool_order_;

  std::unordered_map<Digest, Entry> orphans_;
  std::map<std::uint64_t, Digest> orphan_order_;
  std::unordered_multimap<Digest, Digest> orphans_by_parent_;
};

}  // namespace meshchain::mempool
