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

// Deterministic in-memory network for property tests. Nodes run without a
// gossip thread; every outbound post is queued and the test decides when,
// and in which seeded-random order, queued messages are delivered. Chain
// fetches are answered immediately.

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "meshchain/node/node.hpp"

namespace meshchain::harness {

class SimNetwork {
 public:
  SimNetwork(std::size_t nodes, unsigned difficulty, std::uint64_t seed,
             std::vector<std::vector<std::size_t>> topology = {});
  ~SimNetwork();

  SimNetwork(const SimNetwork&) = delete;
  SimNetwork& operator=(const SimNetwork&) = delete;

  std::size_t size() const { return nodes_.size(); }
  node::Node& node(std::size_t i) { return *nodes_.at(i); }
  static std::string url(std::size_t i);

  std::size_t pending() const;
  /// Delivers one queued message chosen at random; false if none is queued.
  bool deliver_one();
  /// Delivers until the queue drains or `limit` messages were delivered.
  std::size_t deliver_all(std::size_t limit = 1000000);

  /// Posts and fetches between different groups fail while partitioned.
  void partition(const std::vector<std::vector<std::size_t>>& groups);
  /// Lifts the partition and has every node re-announce its tip.
  void heal();

  std::mt19937_64& rng() { return rng_; }

 private:
  struct Shared;
  class Transport;

  std::shared_ptr<Shared> shared_;
  std::vector<std::unique_ptr<node::Node>> nodes_;
  std::mt19937_64 rng_;
};

}  // namespace meshchain::harness
