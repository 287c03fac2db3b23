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

#include "meshchain/node/node.hpp"

#include <algorithm>
#include <iostream>

#include "meshchain/mesh/codec.hpp"
#include "meshchain/mesh/delta.hpp"
#include "meshchain/node/store.hpp"

namespace meshchain::node {
namespace {

constexpr std::size_t kLogCap = 1000;

std::string join_first(const chain::Violations& v, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < n; ++i) {
    if (i) out += "; ";
    out += v[i];
  }
  if (v.size() > n) out += "; ... (" + std::to_string(v.size() - n) + " more)";
  return out;
}

}  // namespace

void validate_config(const NodeConfig& config) {
  if (config.difficulty > chain::kMaxDifficulty) {
    throw std::invalid_argument("difficulty must be within [0, 255]");
  }
}

const char* to_string(BlockReceipt receipt) {
  switch (receipt) {
    case BlockReceipt::extended:
      return "extended";
    case BlockReceipt::reorged:
      return "reorged";
    case BlockReceipt::side_branch:
      return "side_branch";
    case BlockReceipt::orphan:
      return "orphan";
    case BlockReceipt::duplicate:
      return "duplicate";
    case BlockReceipt::invalid:
      return "invalid";
  }
  return "invalid";
}

const char* to_string(SyncOutcome outcome) {
  return outcome == SyncOutcome::adopted ? "adopted" : "kept";
}

Node::Node(NodeConfig config, std::shared_ptr<PeerTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  validate_config(config_);
  if (config_.self_url.empty() && config_.port != 0) {
    config_.self_url = "http://127.0.0.1:" + std::to_string(config_.port);
  }
  peers_.set_self(config_.self_url);
  for (const auto& p : config_.peers) {
    if (!peers_.add(p)) log("warn", "ignoring peer '" + p + "'");
  }

  const Block& genesis = chain::genesis_block();
  blocks_.emplace(genesis.hash, StoredBlock{genesis, chain::block_work(genesis.difficulty)});
  tip_ = genesis.hash;
  index_ = std::make_shared<const history::TxIndex>();

  if (!config_.data_dir.empty()) {
    std::lock_guard lock(mutex_);
    restore_locked();
  }
  if (config_.async_gossip) {
    worker_ = std::jthread([this](std::stop_token stop) { worker_loop(stop); });
  }
}

Node::~Node() { shutdown(); }

void Node::shutdown() {
  {
    std::lock_guard lock(queue_mutex_);
    stopped_ = true;
    queue_.clear();
  }
  {
    std::lock_guard lock(mutex_);
    mining_stop_.request_stop();
  }
  if (worker_.joinable()) {
    worker_.request_stop();
    worker_.join();
  }
}

// --- modeling-tool API -----------------------------------------------------

Transaction Node::commit(const mesh::Mesh& mesh, std::string author,
                         std::optional<Digest> parent_override) {
  if (author.empty()) author = config_.default_author;
  try {
    mesh::validate(mesh);
  } catch (const mesh::MeshError& e) {
    throw NodeError(NodeError::Kind::bad_request, std::string("invalid mesh: ") + e.what());
  }

  std::optional<Digest> parent;
  std::shared_ptr<const history::TxIndex> index;
  std::unordered_map<Digest, Transaction> pooled_ancestry;
  {
    std::lock_guard lock(mutex_);
    if (parent_override) {
      if (!index_->contains(*parent_override) && !mempool_.contains(*parent_override)) {
        throw NodeError(NodeError::Kind::not_found,
                        "unknown parent transaction " + parent_override->hex());
      }
      parent = parent_override;
    } else if (const auto* latest = mempool_.latest()) {
      parent = latest->id;
    } else {
      parent = lineage_tip_locked();
    }
    index = index_;
    // Pooled ancestors are copied so reconstruction can run unlocked.
    for (auto cursor = parent; cursor;) {
      const auto* tx = mempool_.find(*cursor);
      if (tx == nullptr) break;
      pooled_ancestry.emplace(tx->id, *tx);
      cursor = tx->parent;
    }
  }

  mesh::Mesh base;
  if (parent) {
    base = history::reconstruct_mesh(
        [&](const Digest& id) -> const Transaction* {
          if (auto it = pooled_ancestry.find(id); it != pooled_ancestry.end()) return &it->second;
          const auto* loc = index->find(id);
          return loc ? &loc->tx : nullptr;
        },
        *parent);
  }
  mesh::MeshDelta delta = mesh::diff_mesh(base, mesh);
  if (delta.empty()) {
    throw NodeError(NodeError::Kind::bad_request,
                    parent ? "nothing changed: mesh is identical to parent " + parent->hex()
                           : std::string("nothing changed: mesh is empty"));
  }
  Transaction tx = chain::make_transaction(parent, std::move(delta), std::move(author),
                                           chain::unix_now());
  if (auto problems = chain::check_transaction(tx); !problems.empty()) {
    throw NodeError(NodeError::Kind::bad_request, problems.front());
  }

  std::vector<Transaction> to_send;
  {
    std::lock_guard lock(mutex_);
    const auto result =
        mempool_.admit(tx, [this](const Digest& id) { return in_chain_locked(id); });
    switch (result.status) {
      case mempool::AdmitStatus::admitted:
        break;
      case mempool::AdmitStatus::duplicate:
        throw NodeError(NodeError::Kind::conflict, "transaction " + tx.id.hex() + " already exists");
      case mempool::AdmitStatus::orphaned:
        bump();
        throw NodeError(NodeError::Kind::conflict,
                        "parent " + parent->hex() + " left the chain during commit; retry");
      case mempool::AdmitStatus::invalid:
        throw NodeError(NodeError::Kind::bad_request, result.reason);
    }
    bump();
    to_send.push_back(tx);
    for (const auto& id : result.promoted) to_send.push_back(*mempool_.find(id));
  }
  log("info", "committed " + tx.id.short_hex() + " (" +
                  std::to_string(tx.delta.entry_count()) + " script entries)");
  for (const auto& t : to_send) broadcast_transaction(t, std::nullopt);
  return tx;
}

Block Node::mine() {
  for (int attempt = 0; attempt < kMineAttempts; ++attempt) {
    std::vector<Transaction> txs;
    Block prev;
    std::stop_token stop;
    {
      std::lock_guard lock(mutex_);
      auto pending = mempool_.take_all();
      if (!pending) throw NodeError(NodeError::Kind::bad_request, "mempool is empty; nothing to mine");
      txs = std::move(*pending);
      prev = blocks_.at(tip_).block;
      stop = mining_stop_.get_token();
    }

    auto result = chain::mine_block(prev, std::move(txs), config_.difficulty, stop);
    if (result.status == chain::MineStatus::exhausted) {
      throw NodeError(NodeError::Kind::conflict, "nonce space exhausted");
    }
    if (result.status == chain::MineStatus::aborted) {
      log("info", "mining aborted: tip moved");
      continue;
    }

    std::vector<Block> to_send;
    {
      std::lock_guard lock(mutex_);
      if (tip_ != prev.hash) continue;
      const auto receipt = accept_block_locked(*result.block, to_send);
      if (receipt != BlockReceipt::extended) {
        throw std::logic_error(std::string("freshly mined block was ") + to_string(receipt));
      }
    }
    log("info", "mined block " + std::to_string(result.block->height) + " " +
                    result.block->hash.short_hex() + " after " +
                    std::to_string(result.attempts) + " attempts");
    for (const auto& b : to_send) broadcast_block(b, std::nullopt);
    return *result.block;
  }
  throw NodeError(NodeError::Kind::conflict,
                  "chain tip kept moving; gave up after " + std::to_string(kMineAttempts) +
                      " mining attempts");
}

mesh::Mesh Node::checkout(const Digest& tx) const {
  std::shared_ptr<const history::TxIndex> index;
  bool pending = false;
  {
    std::lock_guard lock(mutex_);
    index = index_;
    pending = mempool_.contains(tx) || mempool_.is_orphan(tx);
  }
  if (!index->contains(tx)) {
    throw NodeError(NodeError::Kind::not_found,
                    "transaction " + tx.hex() +
                        (pending ? " is pending in the mempool; mine it before checkout"
                                 : " is not on the active chain"));
  }
  return history::reconstruct_mesh(*index, tx);
}

// --- peer protocol ---------------------------------------------------------

TxReceipt Node::receive_transaction(const Transaction& tx, std::optional<std::string> from_peer) {
  mempool::AdmitResult result;
  std::vector<Transaction> to_send;
  {
    std::lock_guard lock(mutex_);
    result = mempool_.admit(tx, [this](const Digest& id) { return in_chain_locked(id); });
    if (result.status == mempool::AdmitStatus::admitted) {
      to_send.push_back(tx);
      for (const auto& id : result.promoted) to_send.push_back(*mempool_.find(id));
    }
    if (result.status == mempool::AdmitStatus::admitted ||
        result.status == mempool::AdmitStatus::orphaned) {
      bump();
    }
  }
  if (result.status == mempool::AdmitStatus::invalid) {
    log("warn", "dropped transaction " + tx.id.short_hex() + " from " +
                    from_peer.value_or("local") + ": " + result.reason);
  }
  for (const auto& t : to_send) broadcast_transaction(t, from_peer);
  return result.status;
}

BlockReceipt Node::receive_block(const Block& block, std::optional<std::string> from_peer) {
  std::vector<Block> to_send;
  BlockReceipt receipt;
  {
    std::lock_guard lock(mutex_);
    receipt = accept_block_locked(block, to_send);
  }
  for (const auto& b : to_send) {
    broadcast_block(b, b.hash == block.hash ? from_peer : std::nullopt);
  }
  if (receipt == BlockReceipt::orphan && from_peer) {
    log("info", "block " + block.hash.short_hex() + " has unknown parent; syncing from " +
                    *from_peer);
    dispatch([this, peer = *from_peer] { sync_chain(peer); });
  }
  return receipt;
}

SyncOutcome Node::sync_chain(const std::string& peer) {
  const auto genesis_response = transport_->get(peer, "/p2p/genesis");
  if (!genesis_response || genesis_response->status != 200) {
    log("warn", "sync: " + peer + " unreachable");
    return SyncOutcome::kept;
  }
  std::vector<Block> remote;
  try {
    const Json g = parse_json(genesis_response->body);
    const Digest their_genesis = chain::digest_from_json(codec::field(g, "genesis", "genesis"),
                                                         "genesis");
    if (their_genesis != chain::genesis_block().hash) {
      log("warn", "sync: " + peer + " is on a different network (genesis " +
                      their_genesis.short_hex() + ")");
      return SyncOutcome::kept;
    }
    const auto chain_response = transport_->get(peer, "/p2p/chain");
    if (!chain_response || chain_response->status != 200) {
      log("warn", "sync: " + peer + " did not serve its chain");
      return SyncOutcome::kept;
    }
    const Json doc = parse_json(chain_response->body);
    remote = chain::chain_from_json(codec::field(doc, "blocks", "chain"), "blocks");
  } catch (const CodecError& e) {
    log("warn", "sync: malformed response from " + peer + ": " + e.what());
    return SyncOutcome::kept;
  }

  const auto violations = chain::validate_chain(remote, config_.difficulty);
  if (!violations.empty()) {
    log("warn", "sync: rejected chain from " + peer + ": " + join_first(violations, 3));
    return SyncOutcome::kept;
  }
  const chain::Work remote_work = chain::cumulative_work(remote);

  std::vector<Block> to_send;
  {
    std::lock_guard lock(mutex_);
    if (remote_work <= blocks_.at(tip_).work) return SyncOutcome::kept;
    for (std::size_t i = 1; i < remote.size(); ++i) {
      const auto& b = remote[i];
      if (blocks_.contains(b.hash)) continue;
      chain::Work work = blocks_.at(b.prev_hash).work + chain::block_work(b.difficulty);
      blocks_.emplace(b.hash, StoredBlock{b, std::move(work)});
    }
    switch_tip_locked(remote.back().hash);
    for (auto it = orphan_block_order_.begin(); it != orphan_block_order_.end();) {
      if (blocks_.contains(*it)) {
        orphan_blocks_.erase(*it);
        it = orphan_block_order_.erase(it);
      } else {
        ++it;
      }
    }
    persist_locked();
    to_send.push_back(remote.back());
  }
  log("info", "sync: adopted chain from " + peer + " at height " +
                  std::to_string(remote.back().height));
  for (const auto& b : to_send) broadcast_block(b, peer);
  return SyncOutcome::adopted;
}

// --- views -----------------------------------------------------------------

std::vector<Block> Node::active_chain() const {
  std::lock_guard lock(mutex_);
  return branch_locked(tip_);
}

Block Node::tip() const {
  std::lock_guard lock(mutex_);
  return blocks_.at(tip_).block;
}

Digest Node::tip_hash() const {
  std::lock_guard lock(mutex_);
  return tip_;
}

std::uint64_t Node::tip_height() const {
  std::lock_guard lock(mutex_);
  return blocks_.at(tip_).block.height;
}

chain::Work Node::tip_work() const {
  std::lock_guard lock(mutex_);
  return blocks_.at(tip_).work;
}

std::optional<Block> Node::find_block(const Digest& hash) const {
  std::lock_guard lock(mutex_);
  auto it = blocks_.find(hash);
  if (it == blocks_.end()) return std::nullopt;
  return it->second.block;
}

std::optional<TxRecord> Node::find_transaction(const Digest& id) const {
  std::lock_guard lock(mutex_);
  if (const auto* loc = index_->find(id)) return TxRecord{loc->tx, loc->block_hash, loc->height};
  if (const auto* tx = mempool_.find(id)) return TxRecord{*tx, std::nullopt, std::nullopt};
  return std::nullopt;
}

std::shared_ptr<const history::TxIndex> Node::tx_index() const {
  std::lock_guard lock(mutex_);
  return index_;
}

std::vector<Transaction> Node::mempool_transactions() const {
  std::lock_guard lock(mutex_);
  return mempool_.transactions();
}

std::size_t Node::orphan_transaction_count() const {
  std::lock_guard lock(mutex_);
  return mempool_.orphan_count();
}

std::size_t Node::stored_block_count() const {
  std::lock_guard lock(mutex_);
  return blocks_.size();
}

std::vector<std::string> Node::peers() const {
  std::lock_guard lock(mutex_);
  return peers_.urls();
}

bool Node::add_peer(const std::string& url) {
  std::lock_guard lock(mutex_);
  const bool added = peers_.add(url);
  if (added) bump();
  return added;
}

std::string Node::self_url() const {
  std::lock_guard lock(mutex_);
  return peers_.self();
}

void Node::set_self_url(const std::string& url) {
  std::lock_guard lock(mutex_);
  peers_.set_self(url);
}

bool Node::idle() const {
  std::lock_guard lock(queue_mutex_);
  return queue_.empty() && running_tasks_ == 0;
}

void Node::retry_unreachable_peers() {
  Outbound message;
  {
    std::lock_guard lock(mutex_);
    if (unreachable_.empty()) return;
    const Block& tip = blocks_.at(tip_).block;
    if (tip.height == 0) {
      unreachable_.clear();
      return;
    }
    for (const auto& url : unreachable_) {
      if (peers_.contains(url)) message.targets.push_back(url);
    }
    message.path = "/p2p/block";
    message.body = canonical_dump(chain::to_json(tip));
    message.item = tip.hash;
  }
  deliver(message);
}

std::uint64_t Node::relay_count(const Digest& id) const {
  std::lock_guard lock(mutex_);
  auto it = relays_.find(id);
  return it == relays_.end() ? 0 : it->second;
}

std::vector<std::string> Node::log_tail(std::size_t n) const {
  std::lock_guard lock(log_mutex_);
  const std::size_t start = log_.size() > n ? log_.size() - n : 0;
  return {log_.begin() + static_cast<std::ptrdiff_t>(start), log_.end()};
}

bool Node::log_contains(std::string_view needle) const {
  std::lock_guard lock(log_mutex_);
  return std::any_of(log_.begin(), log_.end(),
                     [&](const std::string& line) { return line.find(needle) != std::string::npos; });
}

std::vector<std::string> Node::audit() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> problems;
  const auto active = branch_locked(tip_);
  if (active.empty() || active.front().hash != chain::genesis_block().hash) {
    problems.push_back("active chain does not reach genesis");
    return problems;
  }
  for (auto& v : chain::validate_chain(active, config_.difficulty)) {
    problems.push_back("active chain: " + v);
  }
  const auto& tip_work = blocks_.at(tip_).work;
  for (const auto& [hash, stored] : blocks_) {
    if (stored.work > tip_work) {
      problems.push_back("stored block " + hash.short_hex() + " has more work than the tip");
    }
  }
  const auto expected = history::rebuild_index(active);
  if (expected.order() != index_->order()) problems.push_back("tx index does not match active chain");
  for (const auto& tx : mempool_.transactions()) {
    if (index_->contains(tx.id)) {
      problems.push_back("tx " + tx.id.short_hex() + " is both pooled and on chain");
    }
    if (tx.parent && !index_->contains(*tx.parent) && !mempool_.contains(*tx.parent)) {
      problems.push_back("pooled tx " + tx.id.short_hex() + " has an unknown parent");
    }
  }
  return problems;
}

bool Node::tamper_stored_block(std::uint64_t height, const std::function<void(Block&)>& mutate) {
  std::lock_guard lock(mutex_);
  for (const auto& b : branch_locked(tip_)) {
    if (b.height == height) {
      mutate(blocks_.at(b.hash).block);
      bump();
      return true;
    }
  }
  return false;
}

// --- internals -------------------------------------------------------------

std::vector<Block> Node::branch_locked(const Digest& tip) const {
  std::vector<Block> out;
  auto it = blocks_.find(tip);
  while (it != blocks_.end()) {
    out.push_back(it->second.block);
    if (it->second.block.height == 0) break;
    it = blocks_.find(it->second.block.prev_hash);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

chain::TxIdSet Node::branch_tx_ids_locked(const Digest& tip) const {
  if (tip == tip_) return index_->ids();
  chain::TxIdSet ids;
  for (auto it = blocks_.find(tip); it != blocks_.end();) {
    for (const auto& tx : it->second.block.transactions) ids.insert(tx.id);
    if (it->second.block.height == 0) break;
    it = blocks_.find(it->second.block.prev_hash);
  }
  return ids;
}

BlockReceipt Node::accept_block_locked(const Block& block, std::vector<Block>& to_broadcast) {
  if (blocks_.contains(block.hash) || orphan_blocks_.contains(block.hash)) {
    return BlockReceipt::duplicate;
  }
  if (!blocks_.contains(block.prev_hash)) {
    while (orphan_blocks_.size() >= kOrphanBlockCap && !orphan_block_order_.empty()) {
      orphan_blocks_.erase(orphan_block_order_.front());
      orphan_block_order_.pop_front();
    }
    orphan_blocks_.emplace(block.hash, block);
    orphan_block_order_.push_back(block.hash);
    bump();
    return BlockReceipt::orphan;
  }

  const BlockReceipt receipt = insert_block_locked(block);
  if (receipt == BlockReceipt::invalid) return receipt;
  to_broadcast.push_back(block);

  // Buffered children that now connect.
  std::deque<Digest> frontier{block.hash};
  while (!frontier.empty()) {
    const Digest parent = frontier.front();
    frontier.pop_front();
    for (auto it = orphan_block_order_.begin(); it != orphan_block_order_.end();) {
      auto found = orphan_blocks_.find(*it);
      if (found == orphan_blocks_.end() || found->second.prev_hash != parent) {
        ++it;
        continue;
      }
      Block child = std::move(found->second);
      orphan_blocks_.erase(found);
      it = orphan_block_order_.erase(it);
      if (insert_block_locked(child) != BlockReceipt::invalid) {
        frontier.push_back(child.hash);
        to_broadcast.push_back(std::move(child));
      }
    }
  }
  persist_locked();
  return receipt;
}

BlockReceipt Node::insert_block_locked(const Block& block) {
  const auto& parent = blocks_.at(block.prev_hash);
  const auto violations = chain::validate_block(
      block, parent.block, branch_tx_ids_locked(block.prev_hash), config_.difficulty);
  if (!violations.empty()) {
    log("warn", "rejected block " + std::to_string(block.height) + " " +
                    block.hash.short_hex() + ": " + join_first(violations, 3));
    return BlockReceipt::invalid;
  }
  chain::Work work = parent.work + chain::block_work(block.difficulty);
  const bool heavier = work > blocks_.at(tip_).work;
  const bool extends = block.prev_hash == tip_;
  blocks_.emplace(block.hash, StoredBlock{block, std::move(work)});
  bump();
  if (!heavier) return BlockReceipt::side_branch;
  switch_tip_locked(block.hash);
  return extends ? BlockReceipt::extended : BlockReceipt::reorged;
}

void Node::switch_tip_locked(const Digest& new_tip) {
  const auto old_chain = branch_locked(tip_);
  const auto new_chain = branch_locked(new_tip);
  std::size_t common = 0;
  while (common < old_chain.size() && common < new_chain.size() &&
         old_chain[common].hash == new_chain[common].hash) {
    ++common;
  }

  auto index = std::make_shared<const history::TxIndex>(history::rebuild_index(new_chain));
  index_ = index;
  tip_ = new_tip;
  const mempool::ChainContains in_chain = [index](const Digest& id) { return index->contains(id); };

  std::size_t returned = 0;
  for (std::size_t i = common; i < old_chain.size(); ++i) {
    for (const auto& tx : old_chain[i].transactions) {
      if (index->contains(tx.id)) continue;
      const auto r = mempool_.admit(tx, in_chain);
      if (r.status == mempool::AdmitStatus::admitted || r.status == mempool::AdmitStatus::orphaned) {
        ++returned;
      }
    }
  }
  mempool_.reconcile(in_chain);

  mining_stop_.request_stop();
  mining_stop_ = std::stop_source();
  bump();
  if (common < old_chain.size()) {
    log("info", "reorg: abandoned " + std::to_string(old_chain.size() - common) +
                    " block(s), returned " + std::to_string(returned) +
                    " transaction(s) to the mempool; new tip " + new_tip.short_hex() +
                    " at height " + std::to_string(new_chain.back().height));
  }
}

void Node::persist_locked() {
  if (config_.data_dir.empty()) return;
  StoredChain store;
  store.tip = tip_;
  store.blocks.reserve(blocks_.size());
  for (const auto& [hash, stored] : blocks_) store.blocks.push_back(stored.block);
  std::sort(store.blocks.begin(), store.blocks.end(), [](const Block& a, const Block& b) {
    return a.height != b.height ? a.height < b.height : a.hash < b.hash;
  });
  try {
    save_store(config_.data_dir, store);
  } catch (const std::exception& e) {
    log("error", std::string("persist failed: ") + e.what());
  }
}

void Node::restore_locked() {
  if (!store_exists(config_.data_dir)) return;
  StoredChain store;
  try {
    store = load_store(config_.data_dir);
  } catch (const std::exception& e) {
    log("warn", std::string("corrupt block store, starting from genesis: ") + e.what());
    return;
  }

  std::unordered_map<Digest, const Block*> by_hash;
  for (const auto& b : store.blocks) by_hash.emplace(b.hash, &b);
  std::vector<Block> active;
  for (auto it = by_hash.find(store.tip); it != by_hash.end();) {
    active.push_back(*it->second);
    if (it->second->height == 0) break;
    it = by_hash.find(it->second->prev_hash);
  }
  std::reverse(active.begin(), active.end());
  const auto violations = chain::validate_chain(active, config_.difficulty);
  if (!violations.empty()) {
    log("warn", "stored chain failed validation, starting from genesis: " +
                    join_first(violations, 3));
    return;
  }

  // Active chain first so that equal-work side branches cannot displace the
  // stored tip.
  for (std::size_t i = 1; i < active.size(); ++i) insert_block_locked(active[i]);
  std::vector<const Block*> side;
  for (const auto& b : store.blocks) {
    if (!blocks_.contains(b.hash)) side.push_back(&b);
  }
  std::sort(side.begin(), side.end(),
            [](const Block* a, const Block* b) { return a->height < b->height; });
  for (const Block* b : side) {
    if (blocks_.contains(b->prev_hash)) insert_block_locked(*b);
  }
  log("info", "restored " + std::to_string(blocks_.size()) + " block(s); tip " +
                  tip_.short_hex() + " at height " + std::to_string(blocks_.at(tip_).block.height));
}

std::optional<Digest> Node::lineage_tip_locked() const {
  for (auto it = blocks_.find(tip_); it != blocks_.end();) {
    const auto& txs = it->second.block.transactions;
    if (!txs.empty()) return txs.back().id;
    if (it->second.block.height == 0) break;
    it = blocks_.find(it->second.block.prev_hash);
  }
  return std::nullopt;
}

std::vector<std::string> Node::targets_except_locked(
    const std::optional<std::string>& except) const {
  std::optional<std::string> skip;
  if (except) skip = normalize_peer_url(*except).value_or(*except);
  std::vector<std::string> out;
  for (const auto& url : peers_.urls()) {
    if (!skip || url != *skip) out.push_back(url);
  }
  return out;
}

void Node::broadcast(Outbound message) {
  if (message.targets.empty()) return;
  dispatch([this, message = std::move(message)] { deliver(message); });
}

void Node::broadcast_block(const Block& block, const std::optional<std::string>& except) {
  Outbound message{"/p2p/block", canonical_dump(chain::to_json(block)), block.hash, {}};
  {
    std::lock_guard lock(mutex_);
    message.targets = targets_except_locked(except);
  }
  broadcast(std::move(message));
}

void Node::broadcast_transaction(const Transaction& tx, const std::optional<std::string>& except) {
  Outbound message{"/p2p/transaction", canonical_dump(chain::to_json(tx)), tx.id, {}};
  {
    std::lock_guard lock(mutex_);
    message.targets = targets_except_locked(except);
  }
  broadcast(std::move(message));
}

void Node::deliver(const Outbound& message) {
  const std::string origin = self_url();
  for (const auto& target : message.targets) {
    const auto response = transport_->post(target, message.path, message.body, origin);
    std::lock_guard lock(mutex_);
    ++relays_[message.item];
    if (!response || response->status >= 500) {
      unreachable_.insert(target);
    } else {
      unreachable_.erase(target);
    }
  }
}

void Node::dispatch(std::function<void()> task) {
  if (!config_.async_gossip) {
    task();
    return;
  }
  {
    std::lock_guard lock(queue_mutex_);
    if (stopped_) return;
    queue_.push_back(std::move(task));
  }
  queue_cv_.notify_one();
}

void Node::worker_loop(std::stop_token stop) {
  auto next_retry = std::chrono::steady_clock::now() + config_.retry_interval;
  while (!stop.stop_requested()) {
    std::function<void()> task;
    {
      std::unique_lock lock(queue_mutex_);
      queue_cv_.wait_until(lock, stop, next_retry, [this] { return !queue_.empty(); });
      if (stop.stop_requested()) return;
      if (!queue_.empty()) {
        task = std::move(queue_.front());
        queue_.pop_front();
        ++running_tasks_;
      }
    }
    if (task) {
      try {
        task();
      } catch (const std::exception& e) {
        log("error", std::string("background task failed: ") + e.what());
      }
      std::lock_guard lock(queue_mutex_);
      --running_tasks_;
      continue;
    }
    if (std::chrono::steady_clock::now() >= next_retry) {
      retry_unreachable_peers();
      next_retry = std::chrono::steady_clock::now() + config_.retry_interval;
    }
  }
}

void Node::log(const std::string& level, const std::string& message) const {
  std::string line = "[" + level + "] " + message;
  if (config_.echo_log) std::cerr << line << '\n';
  std::lock_guard lock(log_mutex_);
  log_.push_back(std::move(line));
  while (log_.size() > kLogCap) log_.pop_front();
}

}  // namespace meshchain::node
