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

#include "meshchain/harness/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace meshchain::harness {
namespace {

struct OpSpec {
  StepKind kind;
  std::vector<const char*> required;
  std::vector<const char*> optional;
};

const std::map<std::string, OpSpec>& op_table() {
  static const std::map<std::string, OpSpec> table{
      {"commit", {StepKind::commit, {"node", "obj", "label"}, {"author", "parent"}}},
      {"mine", {StepKind::mine, {"node"}, {}}},
      {"mine_concurrent", {StepKind::mine_concurrent, {"nodes"}, {}}},
      {"partition", {StepKind::partition, {"groups"}, {}}},
      {"heal", {StepKind::heal, {}, {}}},
      {"tamper", {StepKind::tamper, {"node", "height"}, {}}},
      {"sync", {StepKind::sync, {"node", "peer"}, {}}},
      {"restart", {StepKind::restart, {"node"}, {}}},
      {"wait_quiesce", {StepKind::wait_quiesce, {}, {}}},
      {"expect_tips_equal", {StepKind::expect_tips_equal, {}, {"nodes"}}},
      {"expect_mempool", {StepKind::expect_mempool, {"node"}, {"contains", "excludes"}}},
      {"expect_checkout", {StepKind::expect_checkout, {"label"}, {"nodes"}}},
      {"expect_tip_height", {StepKind::expect_tip_height, {"height"}, {"nodes"}}},
      {"record_tip", {StepKind::record_tip, {"node", "label"}, {}}},
      {"expect_tip", {StepKind::expect_tip, {"node", "label"}, {}}},
      {"expect_violation_logged", {StepKind::expect_violation_logged, {"node"}, {"text"}}},
      {"expect_relays_at_most", {StepKind::expect_relays_at_most, {"label", "limit"}, {}}},
  };
  return table;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError(where + ": " + what);
}

std::size_t node_index(const Json& j, std::size_t nodes, const std::string& where) {
  if (!j.is_number_unsigned()) fail(where, "expected a node index");
  const auto i = j.get<std::uint64_t>();
  if (i >= nodes) {
    fail(where, "node " + std::to_string(i) + " does not exist (scenario has " +
                    std::to_string(nodes) + ")");
  }
  return static_cast<std::size_t>(i);
}

std::vector<std::size_t> node_list(const Json& j, std::size_t nodes, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of node indices");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(node_index(j[i], nodes, where + "[" + std::to_string(i) + "]"));
  }
  std::set<std::size_t> unique(out.begin(), out.end());
  if (unique.size() != out.size()) fail(where, "duplicate node index");
  return out;
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::uint64_t number(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::vector<std::string> labels(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

const char* to_string(StepKind kind) {
  for (const auto& [name, spec] : op_table()) {
    if (spec.kind == kind) return name.c_str();
  }
  return "unknown";
}

std::string Step::describe() const {
  return "step " + std::to_string(index) + " (" + to_string(kind) + ")";
}

std::vector<std::vector<std::size_t>> full_topology(std::size_t n) {
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) out[i].push_back(j);
    }
  }
  return out;
}

Scenario scenario_from_json(const Json& doc) {
  if (!doc.is_object()) fail("scenario", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "name" && key != "nodes" && key != "difficulty" && key != "topology" &&
        key != "steps") {
      fail("scenario", "unexpected key '" + key + "'");
    }
  }
  Scenario s;
  if (!doc.contains("name")) fail("scenario", "missing 'name'");
  s.name = text(doc["name"], "name");
  if (!doc.contains("nodes")) fail("scenario", "missing 'nodes'");
  s.nodes = static_cast<std::size_t>(number(doc["nodes"], "nodes"));
  if (s.nodes == 0 || s.nodes > 64) fail("nodes", "must be between 1 and 64");
  if (doc.contains("difficulty")) {
    const auto d = number(doc["difficulty"], "difficulty");
    if (d > 255) fail("difficulty", "must be at most 255");
    s.difficulty = static_cast<unsigned>(d);
  }

  if (!doc.contains("topology") || doc["topology"] == "full") {
    s.topology = full_topology(s.nodes);
  } else {
    const Json& t = doc["topology"];
    if (!t.is_array() || t.size() != s.nodes) {
      fail("topology", "expected \"full\" or one peer list per node");
    }
    for (std::size_t i = 0; i < s.nodes; ++i) {
      const std::string where = "topology[" + std::to_string(i) + "]";
      auto peers = node_list(t[i], s.nodes, where);
      if (std::find(peers.begin(), peers.end(), i) != peers.end()) fail(where, "node lists itself");
      s.topology.push_back(std::move(peers));
    }
  }

  if (!doc.contains("steps") || !doc["steps"].is_array()) fail("scenario", "missing 'steps' array");
  std::set<std::string> commit_labels;
  std::set<std::string> tip_labels;
  bool partitioned = false;
  const Json& steps = doc["steps"];
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string where = "steps[" + std::to_string(i) + "]";
    const Json& j = steps[i];
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
      fail(where, "expected an object with a string 'op'");
    }
    const std::string op = j["op"].get<std::string>();
    const auto found = op_table().find(op);
    if (found == op_table().end()) fail(where, "unknown step '" + op + "'");
    const OpSpec& spec = found->second;
    for (const char* key : spec.required) {
      if (!j.contains(key)) fail(where, "'" + op + "' requires '" + key + "'");
    }
    for (const auto& [key, value] : j.items()) {
      if (key == "op") continue;
      const auto is = [&](const std::vector<const char*>& keys) {
        return std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
      };
      if (!is(spec.required) && !is(spec.optional)) {
        fail(where, "unexpected key '" + key + "' for '" + op + "'");
      }
    }

    Step step;
    step.kind = spec.kind;
    step.index = i;
    const auto known_commit = [&](const std::string& label, const std::string& at) {
      if (!commit_labels.contains(label)) fail(at, "label '" + label + "' is not defined by an earlier commit");
    };
    if (j.contains("node")) step.node = node_index(j["node"], s.nodes, where + ".node");
    if (j.contains("nodes")) step.nodes = node_list(j["nodes"], s.nodes, where + ".nodes");
    if (j.contains("label")) step.label = text(j["label"], where + ".label");
    if (j.contains("height")) step.height = number(j["height"], where + ".height");
    if (j.contains("text")) step.text = text(j["text"], where + ".text");

    switch (spec.kind) {
      case StepKind::commit:
        step.obj = text(j["obj"], where + ".obj");
        if (j.contains("author")) step.author = text(j["author"], where + ".author");
        if (j.contains("parent")) {
          step.parent = text(j["parent"], where + ".parent");
          known_commit(*step.parent, where + ".parent");
        }
        if (!commit_labels.insert(step.label).second) {
          fail(where, "label '" + step.label + "' is already defined");
        }
        break;
      case StepKind::mine_concurrent:
        if (step.nodes.size() < 2) fail(where, "'mine_concurrent' needs at least two nodes");
        break;
      case StepKind::partition: {
        if (partitioned) fail(where, "partition while already partitioned; heal first");
        partitioned = true;
        const Json& g = j["groups"];
        if (!g.is_array() || g.size() < 2) fail(where, "'groups' must list at least two groups");
        std::set<std::size_t> seen;
        for (std::size_t k = 0; k < g.size(); ++k) {
          auto group = node_list(g[k], s.nodes, where + ".groups[" + std::to_string(k) + "]");
          if (group.empty()) fail(where, "empty partition group");
          for (auto n : group) {
            if (!seen.insert(n).second) fail(where, "node " + std::to_string(n) + " is in two groups");
          }
          step.groups.push_back(std::move(group));
        }
        if (seen.size() != s.nodes) fail(where, "every node must belong to a group");
        break;
      }
      case StepKind::heal:
        if (!partitioned) fail(where, "heal without a preceding partition");
        partitioned = false;
        break;
      case StepKind::sync:
        step.peer = node_index(j["peer"], s.nodes, where + ".peer");
        if (step.peer == step.node) fail(where, "a node cannot sync from itself");
        break;
      case StepKind::expect_mempool:
        if (j.contains("contains")) step.contains = labels(j["contains"], where + ".contains");
        if (j.contains("excludes")) step.excludes = labels(j["excludes"], where + ".excludes");
        for (const auto& l : step.contains) known_commit(l, where + ".contains");
        for (const auto& l : step.excludes) known_commit(l, where + ".excludes");
        break;
      case StepKind::expect_checkout:
      case StepKind::expect_relays_at_most:
        known_commit(step.label, where + ".label");
        if (j.contains("limit")) step.limit = number(j["limit"], where + ".limit");
        break;
      case StepKind::record_tip:
        tip_labels.insert(step.label);
        break;
      case StepKind::expect_tip:
        if (!tip_labels.contains(step.label)) {
          fail(where, "tip label '" + step.label + "' is not recorded by an earlier record_tip");
        }
        break;
      case StepKind::expect_violation_logged:
        if (step.text.empty()) step.text = "rejected chain from";
        break;
      default:
        break;
    }
    s.steps.push_back(std::move(step));
  }
  if (partitioned) fail("steps", "partition is never healed");
  return s;
}

Scenario scenario_from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return scenario_from_json(parse_json(buffer.str()));
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  } catch (const CodecError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

}  // namespace meshchain::harness
