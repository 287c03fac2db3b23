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

#include <random>

#include "generators.hpp"
#include "meshchain/chain/pow.hpp"
#include "meshchain/history/history.hpp"
#include "meshchain/mesh/delta.hpp"

namespace {

using namespace meshchain;
using namespace meshchain::history;
using chain::make_transaction;

struct Linear {
  std::vector<mesh::Mesh> meshes;
  std::vector<Transaction> txs;
};

Linear linear_history(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Linear h;
  mesh::Mesh prev;
  for (std::size_t i = 0; i < n; ++i) {
    mesh::Mesh next = i == 0 ? testkit::random_mesh(rng, 20) : testkit::mutate_mesh(rng, prev);
    if (i > 0 && next == prev) next.vertices.push_back(testkit::random_vertex(rng));
    std::optional<Digest> parent;
    if (i > 0) parent = h.txs.back().id;
    h.txs.push_back(make_transaction(parent, mesh::diff_mesh(prev, next), "a",
                                     static_cast<std::int64_t>(i)));
    h.meshes.push_back(next);
    prev = std::move(next);
  }
  return h;
}

std::vector<Block> mine_chain(const std::vector<std::vector<Transaction>>& batches) {
  std::vector<Block> chain{chain::genesis_block()};
  for (const auto& batch : batches) chain.push_back(*chain::mine_block(chain.back(), batch, 0).block);
  return chain;
}

TEST(History, EmptyIndex) {
  const auto index = rebuild_index(std::vector<Block>{chain::genesis_block()});
  EXPECT_TRUE(index.empty());
}

TEST(History, IndexRecordsBlocks) {
  const auto h = linear_history(3, 1);
  const auto chain = mine_chain({{h.txs[0], h.txs[1]}, {h.txs[2]}});
  const auto index = rebuild_index(chain);
  ASSERT_EQ(index.size(), 3u);
  EXPECT_EQ(index.find(h.txs[1].id)->block_hash, chain[1].hash);
  EXPECT_EQ(index.find(h.txs[2].id)->block_hash, chain[2].hash);
  EXPECT_EQ(index.find(h.txs[2].id)->height, 2u);
  EXPECT_EQ(index.order(), (std::vector<Digest>{h.txs[0].id, h.txs[1].id, h.txs[2].id}));
}

TEST(History, AncestryPaths) {
  const auto h = linear_history(5, 2);
  const auto index = rebuild_index(mine_chain({h.txs}));
  EXPECT_EQ(ancestry_path(index, h.txs[0].id).size(), 1u);
  const auto path = ancestry_path(index, h.txs[4].id);
  ASSERT_EQ(path.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(path[i].id, h.txs[i].id);
}

TEST(History, SiblingsAreNotAncestors) {
  const auto h = linear_history(1, 3);
  const auto& a = h.txs[0];
  mesh::MeshDelta db;
  db.vertex_script.insertions.push_back({0, mesh::Vertex{}});
  mesh::MeshDelta dc;
  dc.vertex_script.insertions.push_back({0, mesh::Vertex{mesh::Coord::from_micros(1), {}, {}}});
  const auto b = make_transaction(a.id, db, "b", 1);
  const auto c = make_transaction(a.id, dc, "c", 2);
  const auto index = rebuild_index(mine_chain({{a, b, c}}));
  const auto path = ancestry_path(index, c.id);
  ASSERT_EQ(path.size(), 2u);
  EXPECT_EQ(path[0].id, a.id);
  EXPECT_EQ(path[1].id, c.id);
}

TEST(History, ReconstructsEveryCommit) {
  const auto h = linear_history(10, 4);
  const auto index = rebuild_index(mine_chain({{h.txs[0], h.txs[1], h.txs[2]},
                                               {h.txs[3], h.txs[4], h.txs[5], h.txs[6]},
                                               {h.txs[7], h.txs[8], h.txs[9]}}));
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(reconstruct_mesh(index, h.txs[i].id), h.meshes[i]);
}

TEST(History, UnknownTx) {
  const auto index = rebuild_index(std::vector<Block>{chain::genesis_block()});
  try {
    reconstruct_mesh(index, *Digest::from_hex(std::string(64, 'a')));
    FAIL();
  } catch (const HistoryError& e) {
    EXPECT_EQ(e.kind(), HistoryError::Kind::unknown_tx);
  }
}

TEST(History, BrokenLinkAndBadDelta) {
  const auto h = linear_history(3, 5);
  std::unordered_map<Digest, Transaction> txs{{h.txs[2].id, h.txs[2]}, {h.txs[0].id, h.txs[0]}};
  const TxLookup lookup = [&](const Digest& id) -> const Transaction* {
    auto it = txs.find(id);
    return it == txs.end() ? nullptr : &it->second;
  };
  try {
    reconstruct_mesh(lookup, h.txs[2].id);
    FAIL();
  } catch (const HistoryError& e) {
    EXPECT_EQ(e.kind(), HistoryError::Kind::broken_link);
  }

  mesh::MeshDelta bad;
  bad.vertex_script.deletions = {1000};
  const auto child = make_transaction(h.txs[0].id, bad, "a", 9);
  txs.emplace(child.id, child);
  try {
    reconstruct_mesh(lookup, child.id);
    FAIL();
  } catch (const HistoryError& e) {
    EXPECT_EQ(e.kind(), HistoryError::Kind::delta_failure);
  }
}

TEST(History, RebuildAfterSwitchingBranch) {
  const auto h = linear_history(3, 6);
  const auto g = linear_history(2, 7);
  const auto branch_a = mine_chain({{h.txs[0]}, {h.txs[1], h.txs[2]}});
  const auto branch_b = mine_chain({{g.txs[0], g.txs[1]}});
  const auto index = rebuild_index(branch_b);
  EXPECT_EQ(index.size(), 2u);
  for (const auto& t : h.txs) EXPECT_FALSE(index.contains(t.id));
  for (const auto& t : g.txs) EXPECT_TRUE(index.contains(t.id));
  EXPECT_EQ(rebuild_index(branch_a).size(), 3u);
}

}  // namespace
