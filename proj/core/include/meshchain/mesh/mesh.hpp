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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshchain/mesh/coord.hpp"

namespace meshchain::mesh {

struct Vertex {
  Coord x;
  Coord y;
  Coord z;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A polygon as 0-based indices into the owning mesh's vertex list.
struct Face {
  std::vector<std::uint32_t> indices;

  friend bool operator==(const Face&, const Face&) = default;
};

/// Ordered vertex and face lists. Order is part of identity: two meshes are
/// equal only if both lists match element by element.
struct Mesh {
  std::vector<Vertex> vertices;
  std::vector<Face> faces;

  friend bool operator==(const Mesh&, const Mesh&) = default;
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks a single face against a vertex count. Returns a description of the
/// first problem, or nullopt if the face is well formed.
std::optional<std::string> face_problem(const Face& face, std::size_t vertex_count);

/// Throws MeshError naming the first invalid face.
void validate(const Mesh& mesh);

bool is_valid(const Mesh& mesh);

}  // namespace meshchain::mesh
