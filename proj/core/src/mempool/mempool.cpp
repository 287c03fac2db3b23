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

#include "meshchain/mempool/mempool.hpp"

#include <deque>
#include <functional>
#include <unordered_set>

namespace meshchain::mempool {

const char* to_string(AdmitStatus status) {
  switch (status) {
    case AdmitStatus::admitted:
      return "admitted";
    case AdmitStatus::duplicate:
      return "duplicate";
    case AdmitStatus::orphaned:
      return "orphaned";
    case AdmitStatus::invalid:
      return "invalid";
  }
  return "invalid";
}

AdmitResult Mempool::admit(const Transaction& tx, const ChainContains& in_chain) {
  AdmitResult result;
  if (auto problems = chain::check_transaction(tx); !problems.empty()) {
    result.status = AdmitStatus::invalid;
    result.reason = problems.front();
    return result;
  }
  if (pool_.contains(tx.id) || orphans_.contains(tx.id) || in_chain(tx.id)) {
    result.status = AdmitStatus::duplicate;
    return result;
  }
  const bool parent_known = tx.is_root() || pool_.contains(*tx.parent) || in_chain(*tx.parent);
  if (!parent_known) {
    insert_orphan(tx);
    result.status = AdmitStatus::orphaned;
    return result;
  }
  insert_pooled(tx);
  result.status = AdmitStatus::admitted;
  result.promoted = promote_children(tx.id, in_chain);
  return result;
}

std::optional<std::vector<Transaction>> Mempool::take_all() const {
  if (pool_.empty()) return std::nullopt;
  // A reorg can return a parent to the pool after its child, so arrival
  // order alone is not enough: hold each child back until its parent is out.
  std::vector<Transaction> out;
  out.reserve(pool_.size());
  std::unordered_set<Digest> emitted;
  std::unordered_multimap<Digest, const Transaction*> waiting;
  std::function<void(const Transaction&)> emit = [&](const Transaction& tx) {
    out.push_back(tx);
    emitted.insert(tx.id);
    auto [first, last] = waiting.equal_range(tx.id);
    std::vector<const Transaction*> ready;
    for (auto it = first; it != last; ++it) ready.push_back(it->second);
    waiting.erase(tx.id);
    for (const Transaction* child : ready) emit(*child);
  };
  for (const auto& [seq, id] : pool_order_) {
    const Transaction& tx = pool_.at(id).tx;
    if (tx.parent && pool_.contains(*tx.parent) && !emitted.contains(*tx.parent)) {
      waiting.emplace(*tx.parent, &tx);
    } else {
      emit(tx);
    }
  }
  return out;
}

std::size_t Mempool::reconcile(const ChainContains& in_chain) {
  std::size_t evicted = 0;
  for (auto it = pool_order_.begin(); it != pool_order_.end();) {
    if (in_chain(it->second)) {
      pool_.erase(it->second);
      it = pool_order_.erase(it);
      ++evicted;
    } else {
      ++it;
    }
  }
  std::vector<Digest> stale_orphans;
  for (const auto& [id, entry] : orphans_) {
    if (in_chain(id)) stale_orphans.push_back(id);
  }
  for (const auto& id : stale_orphans) erase_orphan(id);
  evicted += stale_orphans.size();

  // Arrival order puts parents first, so one pass finds every transaction
  // whose ancestry no longer resolves.
  std::vector<Transaction> demoted;
  for (auto it = pool_order_.begin(); it != pool_order_.end();) {
    const auto& tx = pool_.at(it->second).tx;
    if (!tx.is_root() && !in_chain(*tx.parent) && !pool_.contains(*tx.parent)) {
      demoted.push_back(tx);
      pool_.erase(it->second);
      it = pool_order_.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& tx : demoted) insert_orphan(tx);

  // Orphans whose parent is now on the chain or pooled.
  std::vector<Digest> ready;
  for (const auto& [seq, id] : orphan_order_) {
    const auto& tx = orphans_.at(id).tx;
    if (in_chain(*tx.parent) || pool_.contains(*tx.parent)) ready.push_back(id);
  }
  for (const auto& id : ready) {
    auto it = orphans_.find(id);
    if (it == orphans_.end()) continue;  // promoted through an earlier sibling
    const Transaction tx = it->second.tx;
    erase_orphan(id);
    insert_pooled(tx);
    promote_children(tx.id, in_chain);
  }
  return evicted;
}

const Transaction* Mempool::find(const Digest& id) const {
  auto it = pool_.find(id);
  return it == pool_.end() ? nullptr : &it->second.tx;
}

const Transaction* Mempool::latest() const {
  if (pool_order_.empty()) return nullptr;
  return &pool_.at(pool_order_.rbegin()->second).tx;
}

std::vector<Transaction> Mempool::transactions() const {
  std::vector<Transaction> out;
  out.reserve(pool_.size());
  for (const auto& [seq, id] : pool_order_) out.push_back(pool_.at(id).tx);
  return out;
}

std::vector<Transaction> Mempool::orphans() const {
  std::vector<Transaction> out;
  out.reserve(orphans_.size());
  for (const auto& [seq, id] : orphan_order_) out.push_back(orphans_.at(id).tx);
  return out;
}

void Mempool::insert_pooled(const Transaction& tx) {
  const auto seq = next_seq_++;
  pool_.emplace(tx.id, Entry{tx, seq});
  pool_order_.emplace(seq, tx.id);
}

void Mempool::insert_orphan(const Transaction& tx) {
  if (orphan_cap_ == 0) return;
  while (orphans_.size() >= orphan_cap_) erase_orphan(orphan_order_.begin()->second);
  const auto seq = next_seq_++;
  orphans_.emplace(tx.id, Entry{tx, seq});
  orphan_order_.emplace(seq, tx.id);
  orphans_by_parent_.emplace(*tx.parent, tx.id);
}

void Mempool::erase_orphan(const Digest& id) {
  auto it = orphans_.find(id);
  if (it == orphans_.end()) return;
  const Digest parent = *it->second.tx.parent;
  orphan_order_.erase(it->second.seq);
  orphans_.erase(it);
  auto [lo, hi] = orphans_by_parent_.equal_range(parent);
  for (auto p = lo; p != hi; ++p) {
    if (p->second == id) {
      orphans_by_parent_.erase(p);
      break;
    }
  }
}

std::vector<Digest> Mempool::promote_children(const Digest& parent,
                                              const ChainContains& in_chain) {
  std::vector<Digest> promoted;
  std::deque<Digest> frontier{parent};
  while (!frontier.empty()) {
    const Digest current = frontier.front();
    frontier.pop_front();
    // Children in the order they arrived.
    std::map<std::uint64_t, Digest> children;
    auto [lo, hi] = orphans_by_parent_.equal_range(current);
    for (auto it = lo; it != hi; ++it) children.emplace(orphans_.at(it->second).seq, it->second);
    for (const auto& [seq, child] : children) {
      const Transaction tx = orphans_.at(child).tx;
      erase_orphan(child);
      if (in_chain(tx.id)) continue;
      insert_pooled(tx);
      promoted.push_back(tx.id);
      frontier.push_back(tx.id);
    }
  }
  return promoted;
}

}  // namespace meshchain::mempool
