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

#include "meshchain/mesh/obj.hpp"

#include <charconv>
#include <limits>
#include <vector>

namespace meshchain::mesh {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

std::uint32_t parse_face_index(std::string_view token, std::size_t line_no) {
  if (token.find('/') != std::string_view::npos) {
    throw ObjParseError(line_no, "face index '" + std::string(token) +
                                     "' has texture/normal references, which are not supported");
  }
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty() || token.front() == '+') {
    throw ObjParseError(line_no, "malformed face index '" + std::string(token) + "'");
  }
  if (value == 0 || value > std::numeric_limits<std::uint32_t>::max()) {
    throw ObjParseError(line_no, "face index " + std::string(token) + " out of range");
  }
  return static_cast<std::uint32_t>(value - 1);
}

}  // namespace

Mesh parse_obj(std::string_view text) {
  Mesh mesh;
  std::vector<std::size_t> face_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    const std::string_view keyword = tokens.front();
    if (keyword == "v") {
      if (tokens.size() != 4) {
        throw ObjParseError(line_no, "vertex needs exactly 3 coordinates, got " +
                                         std::to_string(tokens.size() - 1));
      }
      Coord xyz[3];
      for (int i = 0; i < 3; ++i) {
        auto c = Coord::parse(tokens[static_cast<std::size_t>(i) + 1]);
        if (!c) {
          throw ObjParseError(line_no, "malformed coordinate '" +
                                           std::string(tokens[static_cast<std::size_t>(i) + 1]) +
                                           "'");
        }
        xyz[i] = *c;
      }
      mesh.vertices.push_back(Vertex{xyz[0], xyz[1], xyz[2]});
    } else if (keyword == "f") {
      Face face;
      face.indices.reserve(tokens.size() - 1);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        face.indices.push_back(parse_face_index(tokens[i], line_no));
      }
      mesh.faces.push_back(std::move(face));
      face_lines.push_back(line_no);
    } else {
      throw ObjParseError(line_no, "unsupported statement '" + std::string(keyword) + "'");
    }
  }

  // Faces may reference vertices declared further down, so range checks
  // wait until the whole document is read.
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    if (auto problem = face_problem(mesh.faces[f], mesh.vertices.size())) {
      throw ObjParseError(face_lines[f], *problem);
    }
  }
  return mesh;
}

std::string serialize_obj(const Mesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 32 + mesh.faces.size() * 16);
  for (const auto& v : mesh.vertices) {
    out += "v ";
    out += v.x.to_string();
    out += ' ';
    out += v.y.to_string();
    out += ' ';
    out += v.z.to_string();
    out += '\n';
  }
  for (const auto& f : mesh.faces) {
    out += 'f';
    for (auto index : f.indices) {
      out += ' ';
      out += std::to_string(static_cast<std::uint64_t>(index) + 1);
    }
    out += '\n';
  }
  return out;
}

}  // namespace meshchain::mesh
