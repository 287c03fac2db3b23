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

#include "meshchain/mesh/mesh.hpp"

#include <algorithm>

namespace meshchain::mesh {

std::optional<std::string> face_problem(const Face& face, std::size_t vertex_count) {
  if (face.indices.size() < 3) {
    return "face has " + std::to_string(face.indices.size()) + " indices, need at least 3";
  }
  for (std::size_t i = 0; i < face.indices.size(); ++i) {
    if (face.indices[i] >= vertex_count) {
      return "face index " + std::to_string(face.indices[i]) + " out of range (" +
             std::to_string(vertex_count) + " vertices)";
    }
  }
  // Faces are small; quadratic is fine and avoids a copy.
  for (std::size_t i = 0; i < face.indices.size(); ++i) {
    for (std::size_t j = i + 1; j < face.indices.size(); ++j) {
      if (face.indices[i] == face.indices[j]) {
        return "face repeats index " + std::to_string(face.indices[i]);
      }
    }
  }
  return std::nullopt;
}

void validate(const Mesh& mesh) {
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    if (auto problem = face_problem(mesh.faces[f], mesh.vertices.size())) {
      throw MeshError("face " + std::to_string(f) + ": " + *problem);
    }
  }
}

bool is_valid(const Mesh& mesh) {
  return std::none_of(mesh.faces.begin(), mesh.faces.end(), [&](const Face& f) {
    return face_problem(f, mesh.vertices.size()).has_value();
  });
}

}  // namespace meshchain::mesh
