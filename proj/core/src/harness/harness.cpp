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

#include "meshchain/harness/harness.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <thread>

#include "meshchain/mesh/obj.hpp"

namespace meshchain::harness {

namespace fs = std::filesystem;
using node::Node;

// --- NetworkControl --------------------------------------------------------

void NetworkControl::register_node(std::size_t index, const std::string& url) {
  std::lock_guard lock(mutex_);
  index_of_[node::normalize_peer_url(url).value_or(url)] = index;
}

void NetworkControl::partition(const std::vector<std::vector<std::size_t>>& groups) {
  std::lock_guard lock(mutex_);
  group_of_.clear();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (auto n : groups[g]) group_of_[n] = g;
  }
}

void NetworkControl::heal() {
  std::lock_guard lock(mutex_);
  group_of_.clear();
}

bool NetworkControl::partitioned() const {
  std::lock_guard lock(mutex_);
  return !group_of_.empty();
}

bool NetworkControl::allowed(std::size_t from, const std::string& to_url) const {
  std::lock_guard lock(mutex_);
  if (group_of_.empty()) return true;
  const auto to = index_of_.find(node::normalize_peer_url(to_url).value_or(to_url));
  if (to == index_of_.end()) return true;
  const auto a = group_of_.find(from);
  const auto b = group_of_.find(to->second);
  if (a == group_of_.end() || b == group_of_.end()) return false;
  return a->second == b->second;
}

std::optional<node::PeerResponse> PartitionedTransport::post(const std::string& peer,
                                                             const std::string& path,
                                                             const std::string& body,
                                                             const std::string& origin) {
  if (!control_->allowed(self_, peer)) return std::nullopt;
  return inner_->post(peer, path, body, origin);
}

std::optional<node::PeerResponse> PartitionedTransport::get(const std::string& peer,
                                                            const std::string& path) {
  if (!control_->allowed(self_, peer)) return std::nullopt;
  return inner_->get(peer, path);
}

// --- Cluster ---------------------------------------------------------------

Cluster::Cluster(ClusterOptions options)
    : options_(std::move(options)),
      control_(std::make_shared<NetworkControl>()),
      http_(std::make_shared<node::HttpTransport>()) {
  if (options_.topology.empty()) options_.topology = full_topology(options_.nodes);
  if (options_.topology.size() != options_.nodes) {
    throw std::invalid_argument("topology must list peers for every node");
  }
  if (options_.work_dir.empty()) {
    std::random_device rd;
    options_.work_dir = fs::temp_directory_path() /
                        ("meshchain-cluster-" + std::to_string(rd()) + std::to_string(rd()));
    owns_work_dir_ = true;
  }
  fs::create_directories(options_.work_dir);

  members_.resize(options_.nodes);
  for (std::size_t i = 0; i < options_.nodes; ++i) {
    members_[i].data_dir = options_.work_dir / ("node" + std::to_string(i));
    start_member(i, 0);
  }
  for (std::size_t i = 0; i < options_.nodes; ++i) {
    for (const auto& url : peer_urls(i)) members_[i].node->add_peer(url);
  }
}

Cluster::~Cluster() {
  for (auto& m : members_) {
    if (m.http) m.http->stop();
  }
  for (auto& m : members_) {
    if (m.node) m.node->shutdown();
  }
  members_.clear();
  if (owns_work_dir_) {
    std::error_code ec;
    fs::remove_all(options_.work_dir, ec);
  }
}

std::vector<std::string> Cluster::peer_urls(std::size_t i) const {
  std::vector<std::string> out;
  for (auto p : options_.topology[i]) {
    if (!members_[p].url.empty()) out.push_back(members_[p].url);
  }
  return out;
}

node::NodeConfig Cluster::config_for(std::size_t i) const {
  node::NodeConfig config;
  config.data_dir = members_[i].data_dir;
  config.difficulty = options_.difficulty;
  config.default_author = "node" + std::to_string(i);
  config.self_url = members_[i].url;
  config.peers = peer_urls(i);
  config.echo_log = options_.echo_log;
  config.retry_interval = options_.retry_interval;
  return config;
}

void Cluster::start_member(std::size_t i, std::uint16_t port) {
  Member& m = members_[i];
  auto transport = std::make_shared<PartitionedTransport>(http_, control_, i);
  m.node = std::make_unique<Node>(config_for(i), std::move(transport));
  node::HttpOptions http_options;
  http_options.port = port;
  m.http = std::make_unique<node::HttpService>(*m.node, http_options);
  m.http->start();
  m.port = m.http->port();
  m.url = m.http->base_url();
  m.node->set_self_url(m.url);
  control_->register_node(i, m.url);
}

void Cluster::partition(const std::vector<std::vector<std::size_t>>& groups) {
  control_->partition(groups);
}

void Cluster::heal() {
  control_->heal();
  for (auto& m : members_) m.node->retry_unreachable_peers();
}

void Cluster::restart(std::size_t i) {
  Member& m = members_.at(i);
  m.http->stop();
  m.http.reset();
  m.node->shutdown();
  m.node.reset();
  start_member(i, m.port);
}

bool Cluster::wait_quiesce(const QuiesceOptions& options) const {
  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + options.timeout;
  std::vector<std::uint64_t> last;
  auto stable_since = clock::now();
  while (clock::now() < deadline) {
    std::vector<std::uint64_t> now;
    bool idle = true;
    for (const auto& m : members_) {
      now.push_back(m.node->state_version());
      idle = idle && m.node->idle();
    }
    if (now != last || !idle) {
      last = std::move(now);
      stable_since = clock::now();
    } else if (clock::now() - stable_since >= options.settle) {
      return true;
    }
    std::this_thread::sleep_for(options.poll);
  }
  return false;
}

// --- run_scenario ----------------------------------------------------------

namespace {

struct Committed {
  chain::Digest id;
  std::string obj;
};

class Runner {
 public:
  Runner(const Scenario& scenario, const RunOptions& options)
      : scenario_(scenario),
        options_(options),
        cluster_(ClusterOptions{scenario.nodes, scenario.difficulty, scenario.topology,
                                options.work_dir, options.echo_log}) {
    report_.scenario = scenario.name;
  }

  Report run() {
    for (const auto& step : scenario_.steps) {
      try {
        execute(step);
      } catch (const std::exception& e) {
        std::string message = step.describe() + ": " + e.what();
        if (step.node < cluster_.size()) {
          for (const auto& line : cluster_.node(step.node).log_tail(5)) message += "\n    " + line;
        }
        failure(message);
      }
    }
    for (std::size_t i = 0; i < cluster_.size(); ++i) {
      auto& n = cluster_.node(i);
      report_.tips.push_back("node " + std::to_string(i) + ": height " +
                             std::to_string(n.tip_height()) + " tip " + n.tip_hash().hex());
      if (tampered_.contains(i)) continue;
      for (const auto& problem : n.audit()) failure("node " + std::to_string(i) + " audit: " + problem);
    }
    report_.passed = report_.failures.empty();
    return std::move(report_);
  }

 private:
  void note(const Step& step, const std::string& text) {
    report_.step_log.push_back(step.describe() + ": " + text);
  }
  void failure(const std::string& text) { report_.failures.push_back(text); }
  void check(const Step& step, bool ok, const std::string& text) {
    if (ok) {
      note(step, "ok: " + text);
    } else {
      note(step, "FAILED: " + text);
      failure(step.describe() + ": " + text);
    }
  }

  std::vector<std::size_t> targets(const Step& step) const {
    if (!step.nodes.empty()) return step.nodes;
    std::vector<std::size_t> all(cluster_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }

  const Committed& committed(const std::string& label) const { return commits_.at(label); }

  void execute(const Step& step) {
    switch (step.kind) {
      case StepKind::commit: {
        const mesh::Mesh m = mesh::parse_obj(step.obj);
        std::optional<chain::Digest> parent;
        if (step.parent) parent = committed(*step.parent).id;
        const auto tx = cluster_.node(step.node).commit(m, step.author, parent);
        commits_[step.label] = Committed{tx.id, mesh::serialize_obj(m)};
        note(step, "node " + std::to_string(step.node) + " committed '" + step.label + "' as " +
                       tx.id.short_hex());
        break;
      }
      case StepKind::mine: {
        const auto b = cluster_.node(step.node).mine();
        note(step, "node " + std::to_string(step.node) + " mined height " +
                       std::to_string(b.height) + " " + b.hash.short_hex());
        break;
      }
      case StepKind::mine_concurrent: {
        std::vector<std::string> outcomes(step.nodes.size());
        std::vector<bool> ok(step.nodes.size(), false);
        {
          std::vector<std::jthread> miners;
          for (std::size_t k = 0; k < step.nodes.size(); ++k) {
            miners.emplace_back([&, k] {
              try {
                const auto b = cluster_.node(step.nodes[k]).mine();
                outcomes[k] = "mined " + b.hash.short_hex();
                ok[k] = true;
              } catch (const std::exception& e) {
                outcomes[k] = e.what();
              }
            });
          }
        }
        std::string summary;
        for (std::size_t k = 0; k < step.nodes.size(); ++k) {
          summary += (k ? "; node " : "node ") + std::to_string(step.nodes[k]) + ": " + outcomes[k];
        }
        check(step, std::any_of(ok.begin(), ok.end(), [](bool b) { return b; }),
              "at least one miner succeeded (" + summary + ")");
        break;
      }
      case StepKind::partition:
        cluster_.partition(step.groups);
        note(step, "partitioned into " + std::to_string(step.groups.size()) + " groups");
        break;
      case StepKind::heal:
        cluster_.heal();
        note(step, "healed");
        break;
      case StepKind::tamper: {
        const bool done = cluster_.node(step.node).tamper_stored_block(step.height, [](chain::Block& b) {
          if (!b.transactions.empty()) {
            b.transactions.front().author += "~";
          } else {
            b.nonce ^= 1;
          }
        });
        if (!done) throw std::runtime_error("no block at height " + std::to_string(step.height));
        tampered_.insert(step.node);
        note(step, "tampered block " + std::to_string(step.height) + " on node " +
                       std::to_string(step.node));
        break;
      }
      case StepKind::sync: {
        const auto outcome = cluster_.node(step.node).sync_chain(cluster_.url(step.peer));
        note(step, "node " + std::to_string(step.node) + " " + node::to_string(outcome) +
                       " after syncing from node " + std::to_string(step.peer));
        break;
      }
      case StepKind::restart:
        cluster_.restart(step.node);
        note(step, "restarted node " + std::to_string(step.node) + " at height " +
                       std::to_string(cluster_.node(step.node).tip_height()));
        break;
      case StepKind::wait_quiesce:
        check(step, cluster_.wait_quiesce(options_.quiesce), "network quiesced");
        break;
      case StepKind::expect_tips_equal: {
        const auto nodes = targets(step);
        const auto first = cluster_.node(nodes.front()).tip_hash();
        bool equal = true;
        for (auto i : nodes) equal = equal && cluster_.node(i).tip_hash() == first;
        check(step, equal, "tips equal (" + first.short_hex() + ")");
        break;
      }
      case StepKind::expect_mempool: {
        std::set<chain::Digest> pooled;
        for (const auto& tx : cluster_.node(step.node).mempool_transactions()) pooled.insert(tx.id);
        for (const auto& l : step.contains) {
          check(step, pooled.contains(committed(l).id),
                "node " + std::to_string(step.node) + " mempool contains '" + l + "'");
        }
        for (const auto& l : step.excludes) {
          check(step, !pooled.contains(committed(l).id),
                "node " + std::to_string(step.node) + " mempool excludes '" + l + "'");
        }
        break;
      }
      case StepKind::expect_checkout: {
        const auto& c = committed(step.label);
        for (auto i : targets(step)) {
          std::string got;
          try {
            got = mesh::serialize_obj(cluster_.node(i).checkout(c.id));
          } catch (const std::exception& e) {
            got = std::string("<error: ") + e.what() + ">";
          }
          check(step, got == c.obj,
                "node " + std::to_string(i) + " checkout of '" + step.label + "' matches");
        }
        break;
      }
      case StepKind::expect_tip_height:
        for (auto i : targets(step)) {
          const auto h = cluster_.node(i).tip_height();
          check(step, h == step.height,
                "node " + std::to_string(i) + " tip height " + std::to_string(h) + " == " +
                    std::to_string(step.height));
        }
        break;
      case StepKind::record_tip:
        tips_[step.label] = cluster_.node(step.node).tip_hash();
        note(step, "recorded '" + step.label + "' = " + tips_[step.label].short_hex());
        break;
      case StepKind::expect_tip: {
        const auto now = cluster_.node(step.node).tip_hash();
        check(step, now == tips_.at(step.label),
              "node " + std::to_string(step.node) + " tip " + now.short_hex() + " equals '" +
                  step.label + "'");
        break;
      }
      case StepKind::expect_violation_logged:
        check(step, cluster_.node(step.node).log_contains(step.text),
              "node " + std::to_string(step.node) + " logged '" + step.text + "'");
        break;
      case StepKind::expect_relays_at_most: {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < cluster_.size(); ++i) {
          total += cluster_.node(i).relay_count(committed(step.label).id);
        }
        check(step, total <= step.limit,
              "relays of '" + step.label + "' " + std::to_string(total) + " <= " +
                  std::to_string(step.limit));
        break;
      }
    }
  }

  const Scenario& scenario_;
  const RunOptions& options_;
  Cluster cluster_;
  Report report_;
  std::map<std::string, Committed> commits_;
  std::map<std::string, chain::Digest> tips_;
  std::set<std::size_t> tampered_;
};

}  // namespace

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
  return Runner(scenario, options).run();
}

}  // namespace meshchain::harness
