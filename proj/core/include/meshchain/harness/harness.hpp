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

// In-process multi-node cluster on loopback HTTP, and the scenario runner on
// top of it. Partitions are emulated in the transport: calls between nodes
// in different groups fail as if the peer were unreachable.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "meshchain/harness/scenario.hpp"
#include "meshchain/node/http.hpp"
#include "meshchain/node/node.hpp"

namespace meshchain::harness {

class NetworkControl {
 public:
  void register_node(std::size_t index, const std::string& url);
  void partition(const std::vector<std::vector<std::size_t>>& groups);
  void heal();
  bool partitioned() const;
  /// False when `to_url` is a registered node in a different group.
  bool allowed(std::size_t from, const std::string& to_url) const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::size_t> index_of_;
  std::map<std::size_t, std::size_t> group_of_;
};

class PartitionedTransport final : public node::PeerTransport {
 public:
  PartitionedTransport(std::shared_ptr<node::PeerTransport> inner,
                       std::shared_ptr<const NetworkControl> control, std::size_t self)
      : inner_(std::move(inner)), control_(std::move(control)), self_(self) {}

  std::optional<node::PeerResponse> post(const std::string& peer, const std::string& path,
                                         const std::string& body,
                                         const std::string& origin) override;
  std::optional<node::PeerResponse> get(const std::string& peer, const std::string& path) override;

 private:
  std::shared_ptr<node::PeerTransport> inner_;
  std::shared_ptr<const NetworkControl> control_;
  std::size_t self_;
};

struct ClusterOptions {
  std::size_t nodes = 1;
  unsigned difficulty = kDefaultScenarioDifficulty;
  /// Empty means fully connected.
  std::vector<std::vector<std::size_t>> topology;
  /// Parent of the per-node data directories; a fresh temporary directory
  /// (removed on destruction) when empty.
  std::filesystem::path work_dir;
  bool echo_log = false;
  std::chrono::milliseconds retry_interval{2000};
};

struct QuiesceOptions {
  std::chrono::milliseconds settle{500};
  std::chrono::milliseconds poll{50};
  std::chrono::milliseconds timeout{30000};
};

class Cluster {
 public:
  explicit Cluster(ClusterOptions options);
  ~Cluster();

  Cluster(const Cluster&) = delete;
  Cluster& operator=(const Cluster&) = delete;

  std::size_t size() const { return members_.size(); }
  node::Node& node(std::size_t i) { return *members_.at(i).node; }
  const std::string& url(std::size_t i) const { return members_.at(i).url; }
  const std::filesystem::path& data_dir(std::size_t i) const { return members_.at(i).data_dir; }

  void partition(const std::vector<std::vector<std::size_t>>& groups);
  /// Lifts the partition and has every node re-announce its tip to peers it
  /// could not reach.
  void heal();

  /// Stops node i and starts it again from its data directory on the same port.
  void restart(std::size_t i);

  /// True once no node's state changed for the settle window and no node has
  /// outbound work pending; false on timeout.
  bool wait_quiesce(const QuiesceOptions& options = {}) const;

 private:
  struct Member {
    std::unique_ptr<node::Node> node;
    std::unique_ptr<node::HttpService> http;
    std::string url;
    std::uint16_t port = 0;
    std::filesystem::path data_dir;
  };

  node::NodeConfig config_for(std::size_t i) const;
  void start_member(std::size_t i, std::uint16_t port);
  std::vector<std::string> peer_urls(std::size_t i) const;

  ClusterOptions options_;
  std::shared_ptr<NetworkControl> control_;
  std::shared_ptr<node::PeerTransport> http_;
  std::vector<Member> members_;
  bool owns_work_dir_ = false;
};

struct Report {
  std::string scenario;
  bool passed = false;
  std::vector<std::string> failures;
  std::vector<std::string> step_log;
  /// One "node i: height h tip <hash>" line per node.
  std::vector<std::string> tips;
};

struct RunOptions {
  std::filesystem::path work_dir;
  bool echo_log = false;
  QuiesceOptions quiesce;
};

Report run_scenario(const Scenario& scenario, const RunOptions& options = {});

}  // namespace meshchain::harness
