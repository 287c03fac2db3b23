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

#include "meshchain/mesh/delta.hpp"

#include <limits>

namespace meshchain::mesh {
namespace {

template <class T>
std::optional<std::string> ordering_problem(const EditScript<T>& script, const char* name) {
  for (std::size_t i = 1; i < script.deletions.size(); ++i) {
    if (script.deletions[i] <= script.deletions[i - 1]) {
      return std::string(name) + " deletions not strictly ascending at entry " + std::to_string(i);
    }
  }
  for (std::size_t i = 1; i < script.insertions.size(); ++i) {
    if (script.insertions[i].first <= script.insertions[i - 1].first) {
      return std::string(name) + " insertions not strictly ascending at entry " +
             std::to_string(i);
    }
  }
  return std::nullopt;
}

}  // namespace

MeshDelta diff_mesh(const Mesh& base, const Mesh& target, const DiffOptions& options) {
  return MeshDelta{diff_sequence(base.vertices, target.vertices, options),
                   diff_sequence(base.faces, target.faces, options)};
}

Mesh patch_mesh(const Mesh& base, const MeshDelta& delta) {
  Mesh out;
  try {
    out.vertices = apply_sequence(base.vertices, delta.vertex_script);
  } catch (const ScriptError& e) {
    throw DeltaError(DeltaError::Script::vertices, e.position(),
                     std::string("vertex script: ") + e.what());
  }
  try {
    out.faces = apply_sequence(base.faces, delta.face_script);
  } catch (const ScriptError& e) {
    throw DeltaError(DeltaError::Script::faces, e.position(),
                     std::string("face script: ") + e.what());
  }
  // Reported position is the insertion that produced the face, or SIZE_MAX
  // for a kept face left dangling by vertex deletions.
  for (std::size_t f = 0; f < out.faces.size(); ++f) {
    if (auto problem = face_problem(out.faces[f], out.vertices.size())) {
      std::size_t position = std::numeric_limits<std::size_t>::max();
      for (std::size_t i = 0; i < delta.face_script.insertions.size(); ++i) {
        if (delta.face_script.insertions[i].first == f) position = i;
      }
      throw DeltaError(DeltaError::Script::faces, position,
                       "result face " + std::to_string(f) + ": " + *problem);
    }
  }
  return out;
}

std::optional<std::string> delta_problem(const MeshDelta& delta) {
  if (auto p = ordering_problem(delta.vertex_script, "vertex")) return p;
  if (auto p = ordering_problem(delta.face_script, "face")) return p;
  for (std::size_t i = 0; i < delta.face_script.insertions.size(); ++i) {
    // Vertex count is unknown here; only shape checks apply.
    if (auto p = face_problem(delta.face_script.insertions[i].second,
                              std::numeric_limits<std::size_t>::max())) {
      return "face insertion " + std::to_string(i) + ": " + *p;
    }
  }
  return std::nullopt;
}

}  // namespace meshchain::mesh
