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

#include <cstddef>
#include <optional>
#include <string>

#include "meshchain/mesh/edit_script.hpp"
#include "meshchain/mesh/mesh.hpp"

namespace meshchain::mesh {

/// The stored form of one mesh modification: independent edit scripts over
/// the vertex list and the face list. A moved vertex is a delete plus an
/// insert at the same index; faces that reference it are untouched.
struct MeshDelta {
  EditScript<Vertex> vertex_script;
  EditScript<Face> face_script;

  bool empty() const { return vertex_script.empty() && face_script.empty(); }
  std::size_t entry_count() const {
    return vertex_script.entry_count() + face_script.entry_count();
  }

  friend bool operator==(const MeshDelta&, const MeshDelta&) = default;
};

/// Applying a delta to a base it was not made for.
class DeltaError : public MeshError {
 public:
  enum class Script { vertices, faces };

  DeltaError(Script script, std::size_t position, const std::string& what)
      : MeshError(what), script_(script), position_(position) {}

  Script script() const { return script_; }
  std::size_t position() const { return position_; }

 private:
  Script script_;
  std::size_t position_;
};

MeshDelta diff_mesh(const Mesh& base, const Mesh& target, const DiffOptions& options = {});

/// Inverse of diff_mesh: patch_mesh(a, diff_mesh(a, b)) == b.
Mesh patch_mesh(const Mesh& base, const MeshDelta& delta);

/// Structural problems visible without a base: ordering of script indices
/// and faces with fewer than 3 or repeated indices.
std::optional<std::string> delta_problem(const MeshDelta& delta);

}  // namespace meshchain::mesh
