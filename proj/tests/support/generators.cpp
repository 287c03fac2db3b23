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

#include "generators.hpp"

#include <algorithm>

namespace meshchain::testkit {

using mesh::Coord;
using mesh::Face;
using mesh::Mesh;
using mesh::Vertex;

Vertex random_vertex(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> coord(-5, 5);
  std::uniform_int_distribution<std::int64_t> micro(0, 999999);
  auto pick = [&] {
    return Coord::from_micros(coord(rng) * 1000000 + (rng() % 4 == 0 ? micro(rng) : 0));
  };
  return Vertex{pick(), pick(), pick()};
}

namespace {

Face random_face(std::mt19937_64& rng, std::size_t vertex_count) {
  const std::size_t corners = (rng() % 4 == 0) ? 4 : 3;
  std::vector<std::uint32_t> pool(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) pool[i] = static_cast<std::uint32_t>(i);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(corners, vertex_count));
  return Face{pool};
}

void add_faces(std::mt19937_64& rng, Mesh& m, std::size_t count) {
  if (m.vertices.size() < 3) return;
  for (std::size_t i = 0; i < count; ++i) m.faces.push_back(random_face(rng, m.vertices.size()));
}

}  // namespace

Mesh random_mesh(std::mt19937_64& rng, std::size_t max_vertices) {
  Mesh m;
  const std::size_t n = rng() % (max_vertices + 1);
  for (std::size_t i = 0; i < n; ++i) m.vertices.push_back(random_vertex(rng));
  add_faces(rng, m, n == 0 ? 0 : rng() % (n + 1));
  return m;
}

Mesh mutate_mesh(std::mt19937_64& rng, const Mesh& base) {
  Mesh m;
  for (const auto& v : base.vertices) {
    switch (rng() % 10) {
      case 0:
        break;
      case 1:
        m.vertices.push_back(random_vertex(rng));
        break;
      case 2:
        m.vertices.push_back(v);
        m.vertices.push_back(random_vertex(rng));
        break;
      default:
        m.vertices.push_back(v);
    }
  }
  if (rng() % 2 == 0) m.vertices.push_back(random_vertex(rng));
  for (const auto& f : base.faces) {
    const bool fits = std::all_of(f.indices.begin(), f.indices.end(),
                                  [&](std::uint32_t i) { return i < m.vertices.size(); });
    if (fits && rng() % 8 != 0) m.faces.push_back(f);
  }
  add_faces(rng, m, rng() % 4);
  return m;
}

Mesh grid_mesh(std::size_t w, std::size_t h) {
  Mesh m;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      m.vertices.push_back(Vertex{Coord::from_micros(static_cast<std::int64_t>(x) * 1000000),
                                  Coord::from_micros(static_cast<std::int64_t>(y) * 1000000),
                                  Coord::from_micros(0)});
    }
  }
  for (std::size_t y = 0; y + 1 < h; ++y) {
    for (std::size_t x = 0; x + 1 < w; ++x) {
      const auto i = static_cast<std::uint32_t>(y * w + x);
      const auto right = i + 1;
      const auto up = static_cast<std::uint32_t>(i + w);
      m.faces.push_back(Face{{i, right, up}});
      m.faces.push_back(Face{{right, up + 1, up}});
    }
  }
  return m;
}

}  // namespace meshchain::testkit
