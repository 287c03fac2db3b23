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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "meshchain/chain/block.hpp"
#include "meshchain/chain/pow.hpp"
#include "meshchain/chain/validation.hpp"
#include "meshchain/harness/harness.hpp"
#include "meshchain/mesh/codec.hpp"
#include "meshchain/mesh/delta.hpp"
#include "meshchain/mesh/edit_script.hpp"
#include "meshchain/mesh/obj.hpp"
#include "oracles.hpp"

namespace {

using namespace meshchain;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome diff_patch_roundtrip() {
  std::mt19937_64 rng(20260101);
  const auto start = Clock::now();
  for (int i = 0; i < 1000; ++i) {
    const mesh::Mesh a = testkit::random_mesh(rng, 200);
    const mesh::Mesh b = (i % 2 == 0) ? testkit::mutate_mesh(rng, a) : testkit::random_mesh(rng, 200);
    if (mesh::patch_mesh(a, mesh::diff_mesh(a, b)) != b) {
      return {false, "pair " + std::to_string(i) + " did not roundtrip"};
    }
  }
  const double elapsed = seconds_since(start);
  char buf[96];
  std::snprintf(buf, sizeof buf, "1000 pairs in %.2f s", elapsed);
  return {elapsed < 30.0, buf};
}

std::vector<std::size_t> kept_indices(std::size_t n, const mesh::EditScript<int>& script) {
  std::vector<bool> deleted(n, false);
  for (auto d : script.deletions) deleted[d] = true;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!deleted[i]) kept.push_back(i);
  }
  return kept;
}

Outcome edit_script_minimality() {
  std::vector<std::vector<int>> all{{}};
  for (std::size_t begin = 0; begin < all.size(); ++begin) {
    if (all[begin].size() == 6) continue;
    for (int v = 0; v < 3; ++v) {
      auto s = all[begin];
      s.push_back(v);
      all.push_back(std::move(s));
    }
  }
  std::size_t pairs = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      const auto script = mesh::diff_sequence(a, b);
      const auto oracle = testkit::subset_lcs(a, b);
      if (mesh::apply_sequence(a, script) != b ||
          script.entry_count() != a.size() + b.size() - 2 * oracle.length ||
          kept_indices(a.size(), script) != oracle.earliest_kept) {
        return {false, "mismatch after " + std::to_string(pairs) + " pairs"};
      }
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " pairs minimal, earliest-match tie rule held"};
}

Outcome transaction_size() {
  auto measure = [](std::size_t side) {
    const mesh::Mesh base = testkit::grid_mesh(side, side);
    mesh::Mesh edited = base;
    auto& v = edited.vertices[edited.vertices.size() / 2];
    v.z = mesh::Coord::from_micros(v.z.micros() + 250000);
    const auto tx = chain::make_transaction(std::nullopt, mesh::diff_mesh(base, edited), "a", 0);
    return std::tuple{canonical_dump(chain::to_json(tx)).size(),
                      mesh::canonical_bytes(edited).size(), tx.delta.entry_count()};
  };
  const auto [tx_big, mesh_big, entries_big] = measure(100);
  const auto [tx_small, mesh_small, entries_small] = measure(10);
  (void)tx_small;
  (void)mesh_small;
  const double ratio = static_cast<double>(tx_big) / static_cast<double>(mesh_big);
  char buf[160];
  std::snprintf(buf, sizeof buf, "tx %zu B vs mesh %zu B (%.4f%%), entries %zu vs %zu", tx_big,
                mesh_big, ratio * 100.0, entries_big, entries_small);
  return {ratio < 0.01 && entries_big == entries_small, buf};
}

// Every JSON leaf of every stored block and transaction, changed so that it
// still has the right type.
void mutate_leaf(Json& leaf, const std::string& key) {
  if (leaf.is_null()) {
    leaf = std::string(64, 'a');
  } else if (leaf.is_number_unsigned()) {
    leaf = leaf.get<std::uint64_t>() + 1;
  } else if (leaf.is_number_integer()) {
    leaf = leaf.get<std::int64_t>() + 1;
  } else if (leaf.is_string()) {
    std::string s = leaf.get<std::string>();
    if (key == "author") {
      s += "x";
    } else {
      // Hex digests and fixed-point coordinates: change the first digit.
      for (auto& c : s) {
        if (std::isxdigit(static_cast<unsigned char>(c))) {
          c = (c == '0') ? '1' : '0';
          break;
        }
      }
    }
    leaf = s;
  }
}

void collect_leaves(const Json& j, const Json::json_pointer& at, std::vector<Json::json_pointer>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) collect_leaves(v, at / k, out);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect_leaves(j[i], at / i, out);
  } else if (!j.is_array() && !j.is_object()) {
    out.push_back(at);
  }
}

Outcome immutability_sweep() {
  std::mt19937_64 rng(99);
  const unsigned difficulty = 8;
  std::vector<chain::Block> chain{chain::genesis_block()};
  mesh::Mesh m = testkit::random_mesh(rng, 8);
  m.vertices.push_back(testkit::random_vertex(rng));
  std::optional<chain::Digest> parent;
  mesh::Mesh prior;
  for (int b = 0; b < 3; ++b) {
    std::vector<chain::Transaction> txs;
    for (int k = 0; k < 2; ++k) {
      txs.push_back(chain::make_transaction(parent, mesh::diff_mesh(prior, m), "author" + std::to_string(k),
                                            1700000000 + b * 10 + k));
      parent = txs.back().id;
      prior = m;
      m = testkit::mutate_mesh(rng, m);
      m.vertices.push_back(testkit::random_vertex(rng));
    }
    chain.push_back(*chain::mine_block(chain.back(), txs, difficulty, {}, 1700000100 + b).block);
  }
  if (!chain::validate_chain(chain, difficulty).empty()) return {false, "unmutated chain rejected"};

  const Json original = chain::chain_to_json(chain);
  std::vector<Json::json_pointer> leaves;
  collect_leaves(original, Json::json_pointer(), leaves);
  std::size_t at_decode = 0;
  std::size_t at_validation = 0;
  for (const auto& ptr : leaves) {
    Json mutated = original;
    const std::string key = ptr.to_string().substr(ptr.to_string().rfind('/') + 1);
    mutate_leaf(mutated[ptr], key);
    if (mutated == original) return {false, "could not mutate " + ptr.to_string()};
    std::vector<chain::Block> decoded;
    try {
      decoded = chain::chain_from_json(mutated);
    } catch (const std::exception&) {
      ++at_decode;
      continue;
    }
    if (chain::validate_chain(decoded, difficulty).empty()) {
      return {false, "mutation of " + ptr.to_string() + " validated"};
    }
    ++at_validation;
  }
  return {true, std::to_string(leaves.size()) + " single-field mutations rejected (" +
                    std::to_string(at_validation) + " by validation, " + std::to_string(at_decode) +
                    " at decode)"};
}

Outcome pow_soundness() {
  std::vector<chain::Block> chain{chain::genesis_block()};
  std::uint64_t attempts = 0;
  for (int i = 0; i < 100; ++i) {
    const auto tx = chain::make_transaction(
        std::nullopt, mesh::diff_mesh({}, testkit::grid_mesh(1, 1 + static_cast<std::size_t>(i))),
        "miner", 1700000000 + i);
    const auto result = chain::mine_block(chain.back(), {tx}, 8, {}, 1700000000 + i);
    if (result.status != chain::MineStatus::mined) return {false, "block " + std::to_string(i) + " not mined"};
    if (testkit::leading_zero_bits_hex(result.block->hash.hex()) < 8) {
      return {false, "block " + std::to_string(i) + " hash lacks 8 zero bits"};
    }
    attempts += result.attempts;
    chain.push_back(*result.block);
  }
  const auto violations = chain::validate_chain(chain, 8);
  const double mean = static_cast<double>(attempts) / 100.0;

  const auto tx = chain::make_transaction(std::nullopt, mesh::diff_mesh({}, testkit::grid_mesh(2, 2)),
                                          "miner", 1);
  const auto start = Clock::now();
  const auto hard = chain::mine_block(chain::genesis_block(), {tx}, 16);
  const double elapsed = seconds_since(start);
  const bool hard_ok = hard.status == chain::MineStatus::mined &&
                       testkit::leading_zero_bits_hex(hard.block->hash.hex()) >= 16;

  char buf[160];
  std::snprintf(buf, sizeof buf, "100 blocks valid=%s, mean attempts %.1f, difficulty 16 in %.2f s",
                violations.empty() ? "yes" : "no", mean, elapsed);
  return {violations.empty() && mean >= 128 && mean <= 512 && hard_ok && elapsed < 5.0, buf};
}

Outcome run_fixture(const std::string& name) {
  const auto scenario = harness::scenario_from_file(std::string(MESHCHAIN_SCENARIO_DIR) + "/" + name + ".json");
  const auto report = harness::run_scenario(scenario);
  if (report.passed) return {true, name + ": " + std::to_string(scenario.steps.size()) + " steps"};
  std::string detail = name + ": ";
  for (const auto& f : report.failures) detail += f + "; ";
  return {false, detail};
}

Outcome checkout_rollback() {
  harness::ClusterOptions options;
  options.nodes = 3;
  options.difficulty = 8;
  harness::Cluster cluster(options);

  std::mt19937_64 rng(7);
  std::vector<std::pair<chain::Digest, std::string>> commits;
  mesh::Mesh m = testkit::random_mesh(rng, 30);
  m.vertices.push_back(testkit::random_vertex(rng));
  for (int i = 0; i < 10; ++i) {
    const auto tx = cluster.node(0).commit(m, "author");
    commits.emplace_back(tx.id, mesh::serialize_obj(m));
    if (i == 2 || i == 5 || i == 9) cluster.node(0).mine();
    m = testkit::mutate_mesh(rng, m);
    m.vertices.push_back(testkit::random_vertex(rng));
  }
  if (!cluster.wait_quiesce()) return {false, "cluster did not quiesce"};

  auto verify = [&](const std::string& phase) -> std::optional<std::string> {
    for (std::size_t n = 0; n < cluster.size(); ++n) {
      for (std::size_t i = 0; i < commits.size(); ++i) {
        try {
          if (mesh::serialize_obj(cluster.node(n).checkout(commits[i].first)) != commits[i].second) {
            return phase + ": node " + std::to_string(n) + " commit " + std::to_string(i) + " differs";
          }
        } catch (const std::exception& e) {
          return phase + ": node " + std::to_string(n) + " commit " + std::to_string(i) + ": " + e.what();
        }
      }
    }
    return std::nullopt;
  };
  if (auto problem = verify("live")) return {false, *problem};
  const auto height = cluster.node(0).tip_height();
  for (std::size_t n = 0; n < cluster.size(); ++n) cluster.restart(n);
  if (auto problem = verify("after restart")) return {false, *problem};
  return {height >= 3, "10 commits in " + std::to_string(height) + " blocks on 3 nodes, before and after restart"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 diff/patch roundtrip", diff_patch_roundtrip},
      {"2 edit-script minimality", edit_script_minimality},
      {"3 transaction size", transaction_size},
      {"4 immutability", immutability_sweep},
      {"5 proof-of-work soundness", pow_soundness},
      {"6 gossip", [] { return run_fixture("three_node_gossip"); }},
      {"7 fork resolution", [] { return run_fixture("partition_heal"); }},
      {"8 byzantine tamper", [] { return run_fixture("byzantine_tamper"); }},
      {"9 checkout and rollback", checkout_rollback},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s  %s: %s\n", outcome.passed ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
