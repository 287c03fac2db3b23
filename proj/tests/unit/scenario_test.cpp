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

#include "meshchain/harness/harness.hpp"
#include "meshchain/harness/scenario.hpp"

namespace {

using namespace meshchain;
using harness::ScenarioError;
using harness::StepKind;

harness::Scenario parse(std::string_view text) { return harness::scenario_from_json(parse_json(text)); }

std::string error_of(std::string_view text) {
  try {
    parse(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

TEST(ScenarioParse, MinimalFileUsesDefaults) {
  const auto s = parse(R"({"name": "m", "nodes": 2, "steps": []})");
  EXPECT_EQ(s.name, "m");
  EXPECT_EQ(s.nodes, 2u);
  EXPECT_EQ(s.difficulty, harness::kDefaultScenarioDifficulty);
  EXPECT_EQ(s.topology, harness::full_topology(2));
  EXPECT_TRUE(s.steps.empty());
}

TEST(ScenarioParse, ExplicitTopology) {
  const auto s = parse(R"({"name": "t", "nodes": 3, "topology": [[1], [0, 2], [1]], "steps": []})");
  EXPECT_EQ(s.topology, (std::vector<std::vector<std::size_t>>{{1}, {0, 2}, {1}}));
}

TEST(ScenarioParse, UnknownOpNamesTheStep) {
  const auto error = error_of(R"({"name": "x", "nodes": 1, "steps": [
      {"op": "wait_quiesce"}, {"op": "bribe", "node": 0}]})");
  EXPECT_NE(error.find("bribe"), std::string::npos) << error;
  EXPECT_NE(error.find("steps[1]"), std::string::npos) << error;
}

TEST(ScenarioParse, RejectsSchemaProblems) {
  EXPECT_NE(error_of(R"({"name": "x", "nodes": 1, "steps": [{"op": "mine", "node": 3}]})"), "");
  EXPECT_NE(error_of(R"({"name": "x", "nodes": 1, "steps": [{"op": "mine", "node": 0, "x": 1}]})"),
            "");
  EXPECT_NE(error_of(R"({"name": "x", "nodes": 1, "steps": [{"op": "expect_checkout", "label": "nope"}]})"),
            "");
  EXPECT_NE(error_of(R"({"name": "x", "nodes": 3, "steps": [{"op": "partition", "groups": [[0], [1]]}]})"),
            "");
  EXPECT_NE(error_of(R"({"name": "x", "nodes": 2, "steps": [{"op": "heal"}]})"), "");
  EXPECT_NE(error_of(R"({"name": "x", "nodes": 0, "steps": []})"), "");
  EXPECT_NE(error_of(R"({"nodes": 1, "steps": []})"), "");
}

TEST(ScenarioParse, PartitionHealFixture) {
  const auto s = harness::scenario_from_file(std::string(MESHCHAIN_SCENARIO_DIR) + "/partition_heal.json");
  EXPECT_EQ(s.nodes, 3u);
  ASSERT_FALSE(s.steps.empty());
  EXPECT_EQ(s.steps[0].kind, StepKind::commit);
  EXPECT_EQ(s.steps[0].label, "base");
  const auto partition = std::find_if(s.steps.begin(), s.steps.end(),
                                      [](const auto& st) { return st.kind == StepKind::partition; });
  ASSERT_NE(partition, s.steps.end());
  EXPECT_EQ(partition->groups, (std::vector<std::vector<std::size_t>>{{0}, {1, 2}}));
}

TEST(ScenarioParse, MissingFileIsAnError) {
  EXPECT_THROW(harness::scenario_from_file("/nonexistent/scenario.json"), ScenarioError);
}

class Fixture : public ::testing::TestWithParam<const char*> {};

TEST_P(Fixture, Passes) {
  const auto s = harness::scenario_from_file(std::string(MESHCHAIN_SCENARIO_DIR) + "/" + GetParam() + ".json");
  const auto report = harness::run_scenario(s);
  std::string detail;
  for (const auto& f : report.failures) detail += f + "\n";
  EXPECT_TRUE(report.passed) << detail;
}

INSTANTIATE_TEST_SUITE_P(Scenarios, Fixture,
                         ::testing::Values("single_node", "concurrent_mine"));

TEST(Harness, FailingAssertionIsReported) {
  const auto s = parse(R"({"name": "f", "nodes": 1, "steps": [
      {"op": "commit", "node": 0, "label": "t", "obj": "v 0 0 0\n"},
      {"op": "expect_tip_height", "height": 5}]})");
  const auto report = harness::run_scenario(s);
  EXPECT_FALSE(report.passed);
  ASSERT_FALSE(report.failures.empty());
  EXPECT_NE(report.failures[0].find("expect_tip_height"), std::string::npos) << report.failures[0];
}

}  // namespace
