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

#include <benchmark/benchmark.h>

#include "meshchain/chain/block.hpp"
#include "meshchain/chain/pow.hpp"
#include "meshchain/chain/validation.hpp"
#include "meshchain/mesh/delta.hpp"

namespace {

using namespace meshchain;

chain::Transaction sample_tx(std::int64_t tag) {
  mesh::Mesh m;
  m.vertices.push_back(mesh::Vertex{mesh::Coord::from_micros(tag), {}, {}});
  return chain::make_transaction(std::nullopt, mesh::diff_mesh({}, m), "bench", tag);
}

void BM_BlockHash(benchmark::State& state) {
  const auto block = *chain::mine_block(chain::genesis_block(), {sample_tx(1)}, 0).block;
  for (auto _ : state) benchmark::DoNotOptimize(chain::block_hash(block));
}
BENCHMARK(BM_BlockHash);

void BM_MineBlock(benchmark::State& state) {
  const auto difficulty = static_cast<unsigned>(state.range(0));
  std::int64_t tag = 0;
  std::uint64_t attempts = 0;
  for (auto _ : state) {
    const auto result = chain::mine_block(chain::genesis_block(), {sample_tx(++tag)}, difficulty);
    attempts += result.attempts;
  }
  state.counters["attempts/block"] =
      benchmark::Counter(static_cast<double>(attempts) / static_cast<double>(state.iterations()));
}
BENCHMARK(BM_MineBlock)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ValidateChain(benchmark::State& state) {
  std::vector<chain::Block> chain{chain::genesis_block()};
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    chain.push_back(*chain::mine_block(chain.back(), {sample_tx(i + 1)}, 8).block);
  }
  for (auto _ : state) benchmark::DoNotOptimize(chain::validate_chain(chain, 8));
}
BENCHMARK(BM_ValidateChain)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
