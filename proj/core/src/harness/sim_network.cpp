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

#include "meshchain/harness/sim_network.hpp"

#include <map>
#include <mutex>

#include "meshchain/harness/scenario.hpp"
#include "meshchain/mesh/codec.hpp"
#include "meshchain/node/store.hpp"

namespace meshchain::harness {

struct SimNetwork::Shared {
  struct Message {
    std::size_t from;
    std::size_t to;
    std::string path;
    std::string body;
  };

  std::mutex mutex;
  std::vector<Message> queue;
  std::map<std::string, std::size_t> index_of;
  std::map<std::size_t, std::size_t> group_of;
  std::vector<node::Node*> nodes;

  std::optional<std::size_t> reachable(std::size_t from, const std::string& url) {
    std::lock_guard lock(mutex);
    auto it = index_of.find(url);
    if (it == index_of.end()) return std::nullopt;
    if (!group_of.empty() && group_of[from] != group_of[it->second]) return std::nullopt;
    return it->second;
  }
};

class SimNetwork::Transport final : public node::PeerTransport {
 public:
  Transport(std::shared_ptr<Shared> shared, std::size_t self)
      : shared_(std::move(shared)), self_(self) {}

  std::optional<node::PeerResponse> post(const std::string& peer, const std::string& path,
                                         const std::string& body, const std::string&) override {
    const auto to = shared_->reachable(self_, peer);
    if (!to) return std::nullopt;
    std::lock_guard lock(shared_->mutex);
    shared_->queue.push_back({self_, *to, path, body});
    return node::PeerResponse{200, R"({"result":"queued"})"};
  }

  std::optional<node::PeerResponse> get(const std::string& peer, const std::string& path) override {
    const auto to = shared_->reachable(self_, peer);
    if (!to) return std::nullopt;
    if (path == "/p2p/genesis") {
      return node::PeerResponse{
          200, canonical_dump(Json{{"format", node::kFormatVersion},
                                   {"genesis", chain::genesis_block().hash.hex()}})};
    }
    if (path == "/p2p/chain") {
      const auto chain = shared_->nodes.at(*to)->active_chain();
      return node::PeerResponse{200, canonical_dump(Json{{"blocks", chain::chain_to_json(chain)}})};
    }
    return node::PeerResponse{404, R"({"error":"not found"})"};
  }

 private:
  std::shared_ptr<Shared> shared_;
  std::size_t self_;
};

SimNetwork::SimNetwork(std::size_t nodes, unsigned difficulty, std::uint64_t seed,
                       std::vector<std::vector<std::size_t>> topology)
    : shared_(std::make_shared<Shared>()), rng_(seed) {
  if (topology.empty()) topology = full_topology(nodes);
  for (std::size_t i = 0; i < nodes; ++i) shared_->index_of[url(i)] = i;
  for (std::size_t i = 0; i < nodes; ++i) {
    node::NodeConfig config;
    config.difficulty = difficulty;
    config.self_url = url(i);
    config.default_author = "node" + std::to_string(i);
    config.async_gossip = false;
    for (auto p : topology.at(i)) config.peers.push_back(url(p));
    nodes_.push_back(std::make_unique<node::Node>(config, std::make_shared<Transport>(shared_, i)));
    shared_->nodes.push_back(nodes_.back().get());
  }
}

SimNetwork::~SimNetwork() {
  std::lock_guard lock(shared_->mutex);
  shared_->queue.clear();
  shared_->nodes.clear();
}

std::string SimNetwork::url(std::size_t i) {
  return "http://node" + std::to_string(i) + ".sim:7000";
}

std::size_t SimNetwork::pending() const {
  std::lock_guard lock(shared_->mutex);
  return shared_->queue.size();
}

bool SimNetwork::deliver_one() {
  Shared::Message message;
  {
    std::lock_guard lock(shared_->mutex);
    if (shared_->queue.empty()) return false;
    std::uniform_int_distribution<std::size_t> pick(0, shared_->queue.size() - 1);
    const std::size_t k = pick(rng_);
    message = std::move(shared_->queue[k]);
    shared_->queue.erase(shared_->queue.begin() + static_cast<std::ptrdiff_t>(k));
  }
  node::Node& target = *nodes_.at(message.to);
  try {
    const Json body = parse_json(message.body);
    if (message.path == "/p2p/transaction") {
      target.receive_transaction(chain::transaction_from_json(body), url(message.from));
    } else if (message.path == "/p2p/block") {
      target.receive_block(chain::block_from_json(body), url(message.from));
    }
  } catch (const CodecError&) {
    // Malformed messages are dropped, as the HTTP layer would.
  }
  return true;
}

std::size_t SimNetwork::deliver_all(std::size_t limit) {
  std::size_t n = 0;
  while (n < limit && deliver_one()) ++n;
  return n;
}

void SimNetwork::partition(const std::vector<std::vector<std::size_t>>& groups) {
  std::lock_guard lock(shared_->mutex);
  shared_->group_of.clear();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (auto n : groups[g]) shared_->group_of[n] = g;
  }
}

void SimNetwork::heal() {
  {
    std::lock_guard lock(shared_->mutex);
    shared_->group_of.clear();
  }
  for (auto& n : nodes_) n->retry_unreachable_peers();
}

}  // namespace meshchain::harness
