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

// Scenario files drive the multi-node harness. Schema (version "1"):
//
//   {
//     "name": "...",
//     "nodes": 3,
//     "difficulty": 8,                       // optional, default 8
//     "topology": "full" | [[1,2],[0],[0]],  // optional, default "full"
//     "steps": [ {"op": "...", ...}, ... ]
//   }
//
// Actions:
//   commit          {node, obj, author?, label, parent?}   parent is a label
//   mine            {node}
//   mine_concurrent {nodes}
//   partition       {groups: [[0],[1,2]]}
//   heal            {}
//   tamper          {node, height}
//   sync            {node, peer}
//   restart         {node}
//   wait_quiesce    {}
// Assertions:
//   expect_tips_equal        {nodes?}
//   expect_mempool           {node, contains?, excludes?}   lists of labels
//   expect_checkout          {label, nodes?}
//   expect_tip_height        {height, nodes?}
//   record_tip               {node, label}
//   expect_tip               {node, label}
//   expect_violation_logged  {node, text?}
//   expect_relays_at_most    {label, limit}

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshchain/mesh/codec.hpp"

namespace meshchain::harness {

inline constexpr unsigned kDefaultScenarioDifficulty = 8;

enum class StepKind {
  commit,
  mine,
  mine_concurrent,
  partition,
  heal,
  tamper,
  sync,
  restart,
  wait_quiesce,
  expect_tips_equal,
  expect_mempool,
  expect_checkout,
  expect_tip_height,
  record_tip,
  expect_tip,
  expect_violation_logged,
  expect_relays_at_most,
};

const char* to_string(StepKind kind);

struct Step {
  StepKind kind = StepKind::wait_quiesce;
  std::size_t index = 0;
  std::size_t node = 0;
  /// Empty means every node, where the step allows it.
  std::vector<std::size_t> nodes;
  std::string obj;
  std::string author;
  std::string label;
  std::optional<std::string> parent;
  std::vector<std::vector<std::size_t>> groups;
  std::uint64_t height = 0;
  std::size_t peer = 0;
  std::vector<std::string> contains;
  std::vector<std::string> excludes;
  std::uint64_t limit = 0;
  std::string text;

  std::string describe() const;
};

struct Scenario {
  std::string name;
  std::size_t nodes = 1;
  unsigned difficulty = kDefaultScenarioDifficulty;
  /// Peer indices per node.
  std::vector<std::vector<std::size_t>> topology;
  std::vector<Step> steps;
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully connected peer lists for n nodes.
std::vector<std::vector<std::size_t>> full_topology(std::size_t n);

Scenario scenario_from_json(const Json& doc);
/// Throws ScenarioError naming the file and location on any schema problem.
Scenario scenario_from_file(const std::filesystem::path& path);

}  // namespace meshchain::harness
