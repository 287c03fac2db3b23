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

#include "meshchain/mesh/codec.hpp"

#include <limits>

namespace meshchain {

std::string canonical_dump(const Json& value) {
  try {
    return value.dump();
  } catch (const Json::exception& e) {
    throw CodecError(std::string("cannot encode: ") + e.what());
  }
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw CodecError(std::string("invalid JSON: ") + e.what());
  }
}

namespace codec {

const Json& field(const Json& object, const char* key, const std::string& path) {
  if (!object.is_object()) throw CodecError(path + ": expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw CodecError(path + ": missing key '" + key + "'");
  return *it;
}

void expect_keys(const Json& object, std::initializer_list<const char*> keys,
                 const std::string& path) {
  if (!object.is_object()) throw CodecError(path + ": expected an object");
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw CodecError(path + ": unexpected key '" + key + "'");
  }
  for (const char* k : keys) {
    if (!object.contains(k)) throw CodecError(path + ": missing key '" + k + "'");
  }
}

std::uint64_t as_unsigned(const Json& value, const std::string& path) {
  if (!value.is_number_unsigned()) throw CodecError(path + ": expected a non-negative integer");
  return value.get<std::uint64_t>();
}

std::int64_t as_integer(const Json& value, const std::string& path) {
  if (value.is_number_unsigned()) {
    const auto u = value.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw CodecError(path + ": integer out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  if (!value.is_number_integer()) throw CodecError(path + ": expected an integer");
  return value.get<std::int64_t>();
}

const std::string& as_string(const Json& value, const std::string& path) {
  if (!value.is_string()) throw CodecError(path + ": expected a string");
  return value.get_ref<const std::string&>();
}

const Json::array_t& as_array(const Json& value, const std::string& path) {
  if (!value.is_array()) throw CodecError(path + ": expected an array");
  return value.get_ref<const Json::array_t&>();
}

}  // namespace codec

namespace mesh {
namespace {

using namespace codec;

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

template <class T, class Encode>
Json script_to_json(const EditScript<T>& s, Encode encode) {
  Json deletions = Json::array();
  for (auto d : s.deletions) deletions.push_back(d);
  Json insertions = Json::array();
  for (const auto& [index, item] : s.insertions) insertions.push_back(Json::array({index, encode(item)}));
  return Json{{"deletions", std::move(deletions)}, {"insertions", std::move(insertions)}};
}

template <class T, class Decode>
EditScript<T> script_from_json(const Json& j, const std::string& path, Decode decode) {
  expect_keys(j, {"deletions", "insertions"}, path);
  EditScript<T> s;
  const auto& deletions = as_array(j["deletions"], path + ".deletions");
  for (std::size_t i = 0; i < deletions.size(); ++i) {
    s.deletions.push_back(as_unsigned(deletions[i], at(path + ".deletions", i)));
  }
  const auto& insertions = as_array(j["insertions"], path + ".insertions");
  for (std::size_t i = 0; i < insertions.size(); ++i) {
    const std::string p = at(path + ".insertions", i);
    const auto& pair = as_array(insertions[i], p);
    if (pair.size() != 2) throw CodecError(p + ": expected [index, item]");
    s.insertions.emplace_back(as_unsigned(pair[0], p + "[0]"), decode(pair[1], p + "[1]"));
  }
  return s;
}

}  // namespace

Json to_json(const Vertex& v) {
  return Json::array({v.x.to_string(), v.y.to_string(), v.z.to_string()});
}

Json to_json(const Face& f) {
  Json out = Json::array();
  for (auto i : f.indices) out.push_back(i);
  return out;
}

Json to_json(const Mesh& m) {
  Json vertices = Json::array();
  for (const auto& v : m.vertices) vertices.push_back(to_json(v));
  Json faces = Json::array();
  for (const auto& f : m.faces) faces.push_back(to_json(f));
  return Json{{"faces", std::move(faces)}, {"vertices", std::move(vertices)}};
}

Json to_json(const EditScript<Vertex>& s) {
  return script_to_json(s, [](const Vertex& v) { return to_json(v); });
}

Json to_json(const EditScript<Face>& s) {
  return script_to_json(s, [](const Face& f) { return to_json(f); });
}

Json to_json(const MeshDelta& d) {
  return Json{{"face_script", to_json(d.face_script)}, {"vertex_script", to_json(d.vertex_script)}};
}

Vertex vertex_from_json(const Json& j, const std::string& path) {
  const auto& arr = as_array(j, path);
  if (arr.size() != 3) throw CodecError(path + ": expected 3 coordinates");
  Coord xyz[3];
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& text = as_string(arr[i], at(path, i));
    auto c = Coord::parse_canonical(text);
    if (!c) throw CodecError(at(path, i) + ": non-canonical coordinate '" + text + "'");
    xyz[i] = *c;
  }
  return Vertex{xyz[0], xyz[1], xyz[2]};
}

Face face_from_json(const Json& j, const std::string& path) {
  const auto& arr = as_array(j, path);
  Face f;
  f.indices.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto v = as_unsigned(arr[i], at(path, i));
    if (v > std::numeric_limits<std::uint32_t>::max()) {
      throw CodecError(at(path, i) + ": index out of range");
    }
    f.indices.push_back(static_cast<std::uint32_t>(v));
  }
  return f;
}

Mesh mesh_from_json(const Json& j, const std::string& path) {
  expect_keys(j, {"faces", "vertices"}, path);
  Mesh m;
  const auto& vertices = as_array(j["vertices"], path + ".vertices");
  m.vertices.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    m.vertices.push_back(vertex_from_json(vertices[i], at(path + ".vertices", i)));
  }
  const auto& faces = as_array(j["faces"], path + ".faces");
  m.faces.reserve(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    m.faces.push_back(face_from_json(faces[i], at(path + ".faces", i)));
  }
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    if (auto problem = face_problem(m.faces[f], m.vertices.size())) {
      throw CodecError(at(path + ".faces", f) + ": " + *problem);
    }
  }
  return m;
}

MeshDelta delta_from_json(const Json& j, const std::string& path) {
  expect_keys(j, {"face_script", "vertex_script"}, path);
  MeshDelta d;
  d.vertex_script = script_from_json<Vertex>(j["vertex_script"], path + ".vertex_script",
                                             [](const Json& v, const std::string& p) {
                                               return vertex_from_json(v, p);
                                             });
  d.face_script = script_from_json<Face>(j["face_script"], path + ".face_script",
                                         [](const Json& v, const std::string& p) {
                                           return face_from_json(v, p);
                                         });
  return d;
}

std::string canonical_bytes(const Mesh& m) { return canonical_dump(to_json(m)); }

std::string canonical_bytes(const MeshDelta& d) { return canonical_dump(to_json(d)); }

}  // namespace mesh
}  // namespace meshchain
