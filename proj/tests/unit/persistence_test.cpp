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

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "generators.hpp"
#include "meshchain/mesh/obj.hpp"
#include "meshchain/node/node.hpp"
#include "meshchain/node/store.hpp"
#include "temp_dir.hpp"

namespace {

using namespace meshchain;

class NullTransport : public node::PeerTransport {
 public:
  std::optional<node::PeerResponse> post(const std::string&, const std::string&,
                                         const std::string&, const std::string&) override {
    return std::nullopt;
  }
  std::optional<node::PeerResponse> get(const std::string&, const std::string&) override {
    return std::nullopt;
  }
};

std::unique_ptr<node::Node> make_node(const std::filesystem::path& dir) {
  node::NodeConfig config;
  config.data_dir = dir;
  config.difficulty = 4;
  config.async_gossip = false;
  return std::make_unique<node::Node>(config, std::make_shared<NullTransport>());
}

TEST(Persistence, RestoreKeepsTipIndexAndCheckouts) {
  testkit::TempDir dir;
  std::mt19937_64 rng(12);
  std::vector<std::pair<chain::Digest, std::string>> commits;
  chain::Digest tip;
  std::vector<chain::Digest> order;
  {
    auto n = make_node(dir.path());
    mesh::Mesh m = testkit::random_mesh(rng, 10);
    m.vertices.push_back(testkit::random_vertex(rng));
    for (int block = 0; block < 3; ++block) {
      for (int k = 0; k < 2; ++k) {
        const auto tx = n->commit(m, "a");
        commits.push_back({tx.id, mesh::serialize_obj(m)});
        mesh::Mesh next = testkit::mutate_mesh(rng, m);
        next.vertices.push_back(testkit::random_vertex(rng));
        m = std::move(next);
      }
      n->mine();
    }
    tip = n->tip_hash();
    order = n->tx_index()->order();
  }
  auto restored = make_node(dir.path());
  EXPECT_EQ(restored->tip_hash(), tip);
  EXPECT_EQ(restored->tx_index()->order(), order);
  for (const auto& [id, obj] : commits) EXPECT_EQ(mesh::serialize_obj(restored->checkout(id)), obj);
  EXPECT_TRUE(restored->audit().empty());
}

TEST(Persistence, RestoresSideBranches) {
  testkit::TempDir dir;
  chain::Block side;
  {
    auto n = make_node(dir.path());
    n->commit(mesh::parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n"), "a");
    n->mine();
    const auto other = chain::make_transaction(
        std::nullopt, mesh::diff_mesh({}, mesh::parse_obj("v 5 5 5\n")), "b", 1);
    side = *chain::mine_block(chain::genesis_block(), {other}, 4).block;
    EXPECT_EQ(n->receive_block(side, std::nullopt), node::BlockReceipt::side_branch);
  }
  auto restored = make_node(dir.path());
  EXPECT_EQ(restored->tip_height(), 1u);
  EXPECT_NE(restored->tip_hash(), side.hash);
  EXPECT_TRUE(restored->find_block(side.hash).has_value());
}

TEST(Persistence, TruncatedStoreStartsFromGenesis) {
  testkit::TempDir dir;
  {
    auto n = make_node(dir.path());
    n->commit(mesh::parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n"), "a");
    n->mine();
  }
  const auto file = dir.path() / node::kStoreFileName;
  const auto size = std::filesystem::file_size(file);
  std::filesystem::resize_file(file, size / 2);
  auto restored = make_node(dir.path());
  EXPECT_EQ(restored->tip_height(), 0u);
  EXPECT_TRUE(restored->log_contains("corrupt block store"));
}

TEST(Persistence, TamperedStoreStartsFromGenesis) {
  testkit::TempDir dir;
  {
    auto n = make_node(dir.path());
    n->commit(mesh::parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n"), "a");
    n->mine();
  }
  auto stored = node::load_store(dir.path());
  stored.blocks.back().transactions[0].author = "mallory";
  node::save_store(dir.path(), stored);
  auto restored = make_node(dir.path());
  EXPECT_EQ(restored->tip_height(), 0u);
  EXPECT_TRUE(restored->log_contains("failed validation"));
}

TEST(Persistence, StoreFileIsCanonicalJson) {
  testkit::TempDir dir;
  {
    auto n = make_node(dir.path());
    n->commit(mesh::parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n"), "a");
    n->mine();
  }
  std::ifstream in(dir.path() / node::kStoreFileName);
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(canonical_dump(parse_json(text)), text);
  EXPECT_EQ(text.rfind(R"({"blocks":[)", 0), 0u);
  EXPECT_FALSE(std::filesystem::exists(dir.path() / (std::string(node::kStoreFileName) + ".tmp")));
}

}  // namespace
