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

// Canonical JSON encoding, format "1".
//
//   Vertex     ["x","y","z"]            six-digit decimal strings
//   Face       [i,j,k,...]              0-based indices
//   Mesh       {"faces":[...],"vertices":[...]}
//   EditScript {"deletions":[...],"insertions":[[index,item],...]}
//   MeshDelta  {"face_script":...,"vertex_script":...}
//
// Canonical bytes are the compact UTF-8 dump with object keys in byte order.
// Decoders are strict: unknown keys, wrong types and non-canonical
// coordinate strings are rejected, so decode(x) re-encodes to x.

#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "meshchain/mesh/delta.hpp"
#include "meshchain/mesh/mesh.hpp"

namespace meshchain {

using Json = nlohmann::json;

/// Malformed or non-canonical JSON document. The message names the path of
/// the offending element, e.g. "delta.vertex_script.insertions[2][1][0]".
class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compact, key-sorted serialization. Throws CodecError on invalid UTF-8.
std::string canonical_dump(const Json& value);

/// Parses text into JSON, mapping syntax errors to CodecError.
Json parse_json(std::string_view text);

namespace codec {

/// Strict accessors used by all decoders; `path` prefixes error messages.
const Json& field(const Json& object, const char* key, const std::string& path);
void expect_keys(const Json& object, std::initializer_list<const char*> keys,
                 const std::string& path);
std::uint64_t as_unsigned(const Json& value, const std::string& path);
std::int64_t as_integer(const Json& value, const std::string& path);
const std::string& as_string(const Json& value, const std::string& path);
const Json::array_t& as_array(const Json& value, const std::string& path);

}  // namespace codec

namespace mesh {

Json to_json(const Vertex& v);
Json to_json(const Face& f);
Json to_json(const Mesh& m);
Json to_json(const EditScript<Vertex>& s);
Json to_json(const EditScript<Face>& s);
Json to_json(const MeshDelta& d);

Vertex vertex_from_json(const Json& j, const std::string& path = "vertex");
Face face_from_json(const Json& j, const std::string& path = "face");
/// Also enforces Mesh invariants (face indices in range).
Mesh mesh_from_json(const Json& j, const std::string& path = "mesh");
MeshDelta delta_from_json(const Json& j, const std::string& path = "delta");

std::string canonical_bytes(const Mesh& m);
std::string canonical_bytes(const MeshDelta& d);

}  // namespace mesh
}  // namespace meshchain
