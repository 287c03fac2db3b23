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

#pragma once

#include <random>

#include "meshchain/mesh/mesh.hpp"

namespace meshchain::testkit {

/// Vertex with coordinates drawn from a small grid so that repeats occur.
mesh::Vertex random_vertex(std::mt19937_64& rng);

/// Valid mesh with up to `max_vertices` vertices and random triangles and quads.
mesh::Mesh random_mesh(std::mt19937_64& rng, std::size_t max_vertices);

/// A valid edit of `base`: some vertices replaced, removed or added, faces
/// that no longer fit dropped, a few new faces appended.
mesh::Mesh mutate_mesh(std::mt19937_64& rng, const mesh::Mesh& base);

/// Regular w x h grid of vertices with two triangles per cell.
mesh::Mesh grid_mesh(std::size_t w, std::size_t h);

}  // namespace meshchain::testkit
