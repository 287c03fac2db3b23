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

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "meshchain/harness/harness.hpp"
#include "meshchain/harness/scenario.hpp"
#include "meshchain/node/http.hpp"
#include "meshchain/node/node.hpp"

namespace {

using meshchain::Json;
using meshchain::node::ApiClient;

constexpr const char* kDefaultNode = "http://127.0.0.1:8080";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string short_id(const std::string& hex) { return hex.substr(0, 12); }

int serve(const meshchain::node::NodeConfig& base, const std::string& host,
          const std::string& web_root) {
  // Block termination signals before any thread starts so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  meshchain::node::NodeConfig config = base;
  if (config.self_url.empty()) {
    config.self_url = "http://" + host + ":" + std::to_string(config.port);
  }
  meshchain::node::Node node(config, std::make_shared<meshchain::node::HttpTransport>());
  meshchain::node::HttpOptions options;
  options.host = host;
  options.port = config.port;
  options.web_root = web_root;
  meshchain::node::HttpService http(node, options);
  http.start();
  std::cerr << "meshchain node listening on " << http.base_url() << " (difficulty "
            << config.difficulty << ", height " << node.tip_height() << ")\n";

  int received = 0;
  sigwait(&signals, &received);
  std::cerr << "shutting down\n";
  http.stop();
  node.shutdown();
  return 0;
}

void print_log(const Json& chain, const Json& mempool) {
  std::cout << "chain: height " << chain["height"].get<std::uint64_t>() << ", tip "
            << chain["tip"].get<std::string>() << ", work " << chain["work"].get<std::string>()
            << "\n";
  for (const auto& b : chain["blocks"]) {
    std::cout << "  block " << b["height"].get<std::uint64_t>() << "  "
              << short_id(b["hash"].get<std::string>()) << "  " << b["tx_ids"].size() << " tx\n";
    for (const auto& id : b["tx_ids"]) std::cout << "    tx " << id.get<std::string>() << "\n";
  }
  std::cout << "mempool: " << mempool["transactions"].size() << " pending, "
            << mempool["orphans"].get<std::uint64_t>() << " orphaned\n";
  for (const auto& tx : mempool["transactions"]) {
    std::cout << "  tx " << tx["id"].get<std::string>() << "  by "
              << tx["author"].get<std::string>() << "\n";
  }
}

int run_harness(const std::string& path, const std::string& work_dir, bool verbose) {
  const auto scenario = meshchain::harness::scenario_from_file(path);
  meshchain::harness::RunOptions options;
  options.work_dir = work_dir;
  options.echo_log = verbose;
  const auto report = meshchain::harness::run_scenario(scenario, options);
  std::cout << "scenario " << report.scenario << "\n";
  for (const auto& line : report.step_log) std::cout << "  " << line << "\n";
  for (const auto& line : report.tips) std::cout << "  " << line << "\n";
  for (const auto& line : report.failures) std::cout << "FAIL " << line << "\n";
  std::cout << (report.passed ? "PASS" : "FAIL") << "\n";
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meshchain: version control for 3D meshes on a proof-of-work blockchain"};
  app.require_subcommand(1);

  meshchain::node::NodeConfig config;
  config.echo_log = true;
  std::string host = "127.0.0.1";
  std::string web_root;
  auto* serve_cmd = app.add_subcommand("serve", "Run a node");
  serve_cmd->add_option("--port", config.port, "Listen port")->default_val(8080);
  serve_cmd->add_option("--host", host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--data-dir", config.data_dir, "Block store directory (omit for memory only)");
  serve_cmd->add_option("--peer", config.peers, "Peer base URL, repeatable");
  serve_cmd->add_option("--difficulty", config.difficulty, "Leading zero bits required")
      ->default_val(meshchain::node::kDefaultDifficulty)
      ->check(CLI::Range(0, 255));
  serve_cmd->add_option("--author", config.default_author, "Author used when a commit names none");
  serve_cmd->add_option("--self-url", config.self_url, "Base URL peers use to reach this node");
  serve_cmd->add_option("--web-root", web_root, "Directory of static files served at /")
      ->check(CLI::ExistingDirectory);

  std::string node_url = kDefaultNode;
  const auto add_node_option = [&](CLI::App* cmd) {
    cmd->add_option("--node", node_url, "Node base URL")->capture_default_str();
  };

  std::string obj_path;
  std::string author;
  std::string parent;
  auto* commit_cmd = app.add_subcommand("commit", "Commit an OBJ file as a transaction");
  commit_cmd->add_option("file", obj_path, "OBJ file")->required()->check(CLI::ExistingFile);
  commit_cmd->add_option("--author", author, "Author name");
  commit_cmd->add_option("--parent", parent, "Parent transaction id");
  add_node_option(commit_cmd);

  std::string tx_id;
  std::string out_path;
  auto* checkout_cmd = app.add_subcommand("checkout", "Reconstruct the mesh at a transaction");
  checkout_cmd->add_option("tx", tx_id, "Transaction id")->required();
  checkout_cmd->add_option("-o,--output", out_path, "Output OBJ file (stdout if omitted)");
  add_node_option(checkout_cmd);

  auto* mine_cmd = app.add_subcommand("mine", "Mine pending transactions into a block");
  add_node_option(mine_cmd);

  auto* log_cmd = app.add_subcommand("log", "List the chain and the mempool");
  add_node_option(log_cmd);

  std::string peer_url;
  auto* peers_cmd = app.add_subcommand("peers", "Show or add peers");
  add_node_option(peers_cmd);
  auto* peers_add = peers_cmd->add_subcommand("add", "Add a peer");
  peers_add->add_option("url", peer_url, "Peer base URL")->required();
  add_node_option(peers_add);

  std::string scenario_path;
  std::string work_dir;
  bool verbose = false;
  auto* harness_cmd = app.add_subcommand("harness", "Multi-node scenarios");
  harness_cmd->require_subcommand(1);
  auto* harness_run = harness_cmd->add_subcommand("run", "Run a scenario file");
  harness_run->add_option("scenario", scenario_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  harness_run->add_option("--work-dir", work_dir, "Keep node data under this directory");
  harness_run->add_flag("-v,--verbose", verbose, "Echo node logs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) return serve(config, host, web_root);
    if (*harness_run) return run_harness(scenario_path, work_dir, verbose);

    const ApiClient client(node_url);
    if (*commit_cmd) {
      Json body{{"author", author}, {"obj_text", read_file(obj_path)}};
      if (!parent.empty()) body["parent"] = parent;
      const Json tx = client.post("/api/commit", body);
      std::cout << tx["id"].get<std::string>() << "\n";
    } else if (*checkout_cmd) {
      const Json result = client.get("/api/checkout/" + tx_id);
      const auto text = result["obj_text"].get<std::string>();
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) throw std::runtime_error("cannot write " + out_path);
      }
    } else if (*mine_cmd) {
      const Json block = client.post("/api/mine", Json::object());
      std::cout << "block " << block["height"].get<std::uint64_t>() << " "
                << block["hash"].get<std::string>() << " (" << block["transactions"].size()
                << " tx)\n";
    } else if (*log_cmd) {
      print_log(client.get("/api/chain"), client.get("/api/mempool"));
    } else if (*peers_add) {
      const Json result = client.post("/api/peers", Json{{"url", peer_url}});
      std::cout << (result["added"].get<bool>() ? "added " : "already known: ") << peer_url << "\n";
    } else if (*peers_cmd) {
      for (const auto& p : client.get("/api/peers")["peers"]) std::cout << p.get<std::string>() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
