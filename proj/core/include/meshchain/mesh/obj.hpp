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
#include <string>
#include <string_view>

#include "meshchain/mesh/mesh.hpp"

namespace meshchain::mesh {

/// Raised for documents outside the accepted OBJ subset. line() is 1-based;
/// 0 means the problem is not tied to one line.
class ObjParseError : public MeshError {
 public:
  ObjParseError(std::size_t line, const std::string& what)
      : MeshError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Geometry-only OBJ reader. Accepts `v x y z`, `f i j k ...` with plain
/// 1-based indices, `#` comments and blank lines. Every other statement
/// (vt, vn, usemtl, o, g, s, ...) is rejected rather than dropped.
Mesh parse_obj(std::string_view text);

/// Writes vertices then faces, one statement per line, 1-based indices and
/// six fractional digits. An empty mesh yields an empty string.
std::string serialize_obj(const Mesh& mesh);

}  // namespace meshchain::mesh
