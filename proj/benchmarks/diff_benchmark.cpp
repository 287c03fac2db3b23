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

#include <random>
#include <vector>

#include "meshchain/mesh/codec.hpp"
#include "meshchain/mesh/delta.hpp"
#include "meshchain/mesh/edit_script.hpp"

namespace {

using namespace meshchain;

mesh::Mesh grid(std::size_t side) {
  mesh::Mesh m;
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      m.vertices.push_back(mesh::Vertex{mesh::Coord::from_micros(static_cast<std::int64_t>(x) * 1000000),
                                        mesh::Coord::from_micros(static_cast<std::int64_t>(y) * 1000000),
                                        mesh::Coord{}});
    }
  }
  for (std::size_t y = 0; y + 1 < side; ++y) {
    for (std::size_t x = 0; x + 1 < side; ++x) {
      const auto i = static_cast<std::uint32_t>(y * side + x);
      const auto s = static_cast<std::uint32_t>(side);
      m.faces.push_back(mesh::Face{{i, i + 1, i + s}});
      m.faces.push_back(mesh::Face{{i + 1, i + s + 1, i + s}});
    }
  }
  return m;
}

void BM_DiffSingleVertexEdit(benchmark::State& state) {
  const mesh::Mesh base = grid(static_cast<std::size_t>(state.range(0)));
  mesh::Mesh edited = base;
  edited.vertices[edited.vertices.size() / 2].z = mesh::Coord::from_micros(500000);
  for (auto _ : state) benchmark::DoNotOptimize(mesh::diff_mesh(base, edited));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(base.vertices.size()));
}
BENCHMARK(BM_DiffSingleVertexEdit)->Arg(10)->Arg(100)->Arg(300);

void BM_DiffRandomSequences(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<int> a(n);
  std::vector<int> b(n);
  for (auto& x : a) x = static_cast<int>(rng() % 8);
  for (auto& x : b) x = static_cast<int>(rng() % 8);
  for (auto _ : state) benchmark::DoNotOptimize(mesh::diff_sequence(a, b));
}
BENCHMARK(BM_DiffRandomSequences)->Arg(64)->Arg(512)->Arg(4096);

void BM_DiffRandomSequencesLinearSpace(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<int> a(n);
  std::vector<int> b(n);
  for (auto& x : a) x = static_cast<int>(rng() % 8);
  for (auto& x : b) x = static_cast<int>(rng() % 8);
  mesh::DiffOptions linear;
  linear.exact_tiebreak_limit = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mesh::diff_sequence(a, b, linear));
}
BENCHMARK(BM_DiffRandomSequencesLinearSpace)->Arg(64)->Arg(512)->Arg(4096);

void BM_PatchMesh(benchmark::State& state) {
  const mesh::Mesh base = grid(static_cast<std::size_t>(state.range(0)));
  mesh::Mesh edited = base;
  edited.vertices[0].x = mesh::Coord::from_micros(-1);
  const auto delta = mesh::diff_mesh(base, edited);
  for (auto _ : state) benchmark::DoNotOptimize(mesh::patch_mesh(base, delta));
}
BENCHMARK(BM_PatchMesh)->Arg(100);

void BM_CanonicalEncodeMesh(benchmark::State& state) {
  const mesh::Mesh m = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mesh::canonical_bytes(m));
}
BENCHMARK(BM_CanonicalEncodeMesh)->Arg(100);

}  // namespace
