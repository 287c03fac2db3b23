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

// The blockchain client: owns the block tree, the active tip, the
// transaction index and the mempool; answers the modeling-tool API and the
// peer protocol; gossips by flooding with first-seen dedup; resolves forks by
// greatest cumulative work (the incumbent tip wins ties).
//
// Threading: all state lives behind one mutex that is held only for short
// transitions. Mining and every outbound peer call happen with the mutex
// released. A running miner is cancelled through a stop token whenever the
// tip moves. With `async_gossip` set, outbound calls run on a private worker
// thread; otherwise they run inline on the calling thread, which is what the
// deterministic simulator uses.

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "meshchain/chain/block.hpp"
#include "meshchain/chain/pow.hpp"
#include "meshchain/chain/validation.hpp"
#include "meshchain/history/history.hpp"
#include "meshchain/mempool/mempool.hpp"
#include "meshchain/mesh/mesh.hpp"
#include "meshchain/node/peer_set.hpp"
#include "meshchain/node/transport.hpp"

namespace meshchain::node {

using chain::Block;
using chain::Digest;
using chain::Transaction;

inline constexpr unsigned kDefaultDifficulty = 16;
inline constexpr std::size_t kOrphanBlockCap = 256;
inline constexpr int kMineAttempts = 3;

struct NodeConfig {
  std::uint16_t port = 0;
  /// Empty disables persistence.
  std::filesystem::path data_dir;
  std::vector<std::string> peers;
  unsigned difficulty = kDefaultDifficulty;
  std::string default_author = "anonymous";
  /// Base URL peers use to reach this node; derived from `port` if empty.
  std::string self_url;
  bool async_gossip = true;
  /// How often the worker re-announces the tip to peers that failed earlier.
  std::chrono::milliseconds retry_interval{2000};
  /// Mirror log lines to stderr.
  bool echo_log = false;
};

/// Throws std::invalid_argument for out-of-range fields.
void validate_config(const NodeConfig& config);

class NodeError : public std::runtime_error {
 public:
  enum class Kind { bad_request, not_found, conflict };

  NodeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using TxReceipt = mempool::AdmitStatus;

enum class BlockReceipt { extended, reorged, side_branch, orphan, duplicate, invalid };
const char* to_string(BlockReceipt receipt);

enum class SyncOutcome { adopted, kept };
const char* to_string(SyncOutcome outcome);

struct TxRecord {
  Transaction tx;
  /// Set for transactions on the active chain; unset for pooled ones.
  std::optional<Digest> block_hash;
  std::optional<std::uint64_t> height;
};

class Node {
 public:
  Node(NodeConfig config, std::shared_ptr<PeerTransport> transport);
  ~Node();

  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  // --- modeling-tool API -------------------------------------------------

  /// Packs `mesh` as a delta against its parent: `parent_override` when
  /// given, else the newest pooled transaction, else the last transaction
  /// of the newest non-empty block on the active chain, else none.
  Transaction commit(const mesh::Mesh& mesh, std::string author,
                     std::optional<Digest> parent_override = std::nullopt);

  /// Mines every pooled transaction into one block on the current tip.
  /// Retries up to kMineAttempts times if the tip moves mid-search.
  Block mine();

  /// Reconstructs the mesh at a transaction of the active chain.
  mesh::Mesh checkout(const Digest& tx) const;

  // --- peer protocol -----------------------------------------------------

  TxReceipt receive_transaction(const Transaction& tx, std::optional<std::string> from_peer);
  BlockReceipt receive_block(const Block& block, std::optional<std::string> from_peer);
  /// Fetches `peer`'s active chain and adopts it if it is valid from our
  /// genesis and carries strictly more work.
  SyncOutcome sync_chain(const std::string& peer);

  // --- views -------------------------------------------------------------

  std::vector<Block> active_chain() const;
  Block tip() const;
  Digest tip_hash() const;
  std::uint64_t tip_height() const;
  chain::Work tip_work() const;
  std::optional<Block> find_block(const Digest& hash) const;
  std::optional<TxRecord> find_transaction(const Digest& id) const;
  std::shared_ptr<const history::TxIndex> tx_index() const;
  std::vector<Transaction> mempool_transactions() const;
  std::size_t orphan_transaction_count() const;
  std::size_t stored_block_count() const;

  std::vector<std::string> peers() const;
  /// False if the URL is malformed, self, or already known.
  bool add_peer(const std::string& url);
  std::string self_url() const;
  void set_self_url(const std::string& url);

  const NodeConfig& config() const { return config_; }
  unsigned difficulty() const { return config_.difficulty; }

  /// Bumped on every state change; used to detect quiescence.
  std::uint64_t state_version() const { return version_.load(); }
  /// No queued or running outbound work.
  bool idle() const;

  /// Sends the tip block to every peer whose last delivery failed.
  void retry_unreachable_peers();

  /// Number of times a transaction or block was sent to a peer.
  std::uint64_t relay_count(const Digest& id) const;

  std::vector<std::string> log_tail(std::size_t n = 50) const;
  bool log_contains(std::string_view needle) const;

  /// Re-checks every NodeState invariant; returns the violations found.
  std::vector<std::string> audit() const;

  /// Test hook: mutates the stored copy of the active-chain block at
  /// `height` in place, without rehashing, so this node serves tampered
  /// history to peers. Returns false if there is no such block.
  bool tamper_stored_block(std::uint64_t height, const std::function<void(Block&)>& mutate);

  /// Stops the worker thread; further gossip is dropped.
  void shutdown();

 private:
  struct StoredBlock {
    Block block;
    chain::Work work;
  };

  struct Outbound {
    std::string path;
    std::string body;
    Digest item;
    std::vector<std::string> targets;
  };

  // All *_locked members require mutex_.
  std::vector<Block> branch_locked(const Digest& tip) const;
  chain::TxIdSet branch_tx_ids_locked(const Digest& tip) const;
  BlockReceipt accept_block_locked(const Block& block, std::vector<Block>& to_broadcast);
  BlockReceipt insert_block_locked(const Block& block);
  void switch_tip_locked(const Digest& new_tip);
  void persist_locked();
  void restore_locked();
  std::optional<Digest> lineage_tip_locked() const;
  std::vector<std::string> targets_except_locked(const std::optional<std::string>& except) const;
  bool in_chain_locked(const Digest& id) const { return index_->contains(id); }

  void broadcast(Outbound message);
  void broadcast_block(const Block& block, const std::optional<std::string>& except);
  void broadcast_transaction(const Transaction& tx, const std::optional<std::string>& except);
  void deliver(const Outbound& message);
  void dispatch(std::function<void()> task);
  void worker_loop(std::stop_token stop);

  void log(const std::string& level, const std::string& message) const;
  void bump() { version_.fetch_add(1); }

  NodeConfig config_;
  std::shared_ptr<PeerTransport> transport_;

  mutable std::mutex mutex_;
  std::unordered_map<Digest, StoredBlock> blocks_;
  Digest tip_;
  std::shared_ptr<const history::TxIndex> index_;
  mempool::Mempool mempool_;
  PeerSet peers_;
  std::unordered_map<Digest, Block> orphan_blocks_;
  std::deque<Digest> orphan_block_order_;
  std::stop_source mining_stop_;
  std::set<std::string> unreachable_;
  std::unordered_map<Digest, std::uint64_t> relays_;

  std::atomic<std::uint64_t> version_{0};

  mutable std::mutex log_mutex_;
  mutable std::deque<std::string> log_;

  mutable std::mutex queue_mutex_;
  std::condition_variable_any queue_cv_;
  std::deque<std::function<void()>> queue_;
  int running_tasks_ = 0;
  bool stopped_ = false;
  std::jthread worker_;
};

}  // namespace meshchain::node
