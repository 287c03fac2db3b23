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

#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "meshchain/mesh/codec.hpp"
#include "meshchain/mesh/delta.hpp"
#include "meshchain/mesh/obj.hpp"

namespace {

using namespace meshchain;
using namespace meshchain::mesh;

TEST(Codec, EmptyMeshBytes) { EXPECT_EQ(canonical_bytes(Mesh{}), R"({"faces":[],"vertices":[]})"); }

TEST(Codec, TriangleBytes) {
  const Mesh m = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3");
  EXPECT_EQ(canonical_bytes(m),
            R"({"faces":[[0,1,2]],"vertices":[["0.000000","0.000000","0.000000"],)"
            R"(["1.000000","0.000000","0.000000"],["0.000000","1.000000","0.000000"]]})");
}

TEST(Codec, SixthDigitChangesBytes) {
  const Mesh a = parse_obj("v 0.000001 0 0\n");
  const Mesh b = parse_obj("v 0.000002 0 0\n");
  EXPECT_NE(canonical_bytes(a), canonical_bytes(b));
  EXPECT_EQ(canonical_bytes(a), canonical_bytes(parse_obj("v 0.0000010 0 0\n")));
}

TEST(Codec, MeshJsonRoundtrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Mesh m = testkit::random_mesh(rng, 30);
    EXPECT_EQ(mesh_from_json(parse_json(canonical_bytes(m))), m);
  }
}

TEST(Codec, DeltaJsonRoundtrip) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    const Mesh a = testkit::random_mesh(rng, 30);
    const MeshDelta d = diff_mesh(a, testkit::mutate_mesh(rng, a));
    EXPECT_EQ(delta_from_json(parse_json(canonical_bytes(d))), d);
  }
}

TEST(Codec, DecodersAreStrict) {
  EXPECT_THROW(vertex_from_json(parse_json(R"(["1.0","0.000000","0.000000"])")), CodecError);
  EXPECT_THROW(vertex_from_json(parse_json(R"([1,0,0])")), CodecError);
  EXPECT_THROW(vertex_from_json(parse_json(R"(["0.000000","0.000000"])")), CodecError);
  EXPECT_THROW(mesh_from_json(parse_json(R"({"faces":[],"vertices":[],"extra":1})")), CodecError);
  EXPECT_THROW(mesh_from_json(parse_json(R"({"faces":[]})")), CodecError);
  EXPECT_THROW(face_from_json(parse_json(R"([0,1,-2])")), CodecError);
  EXPECT_THROW(parse_json("{"), CodecError);
}

TEST(Codec, CanonicalDumpSortsKeys) {
  EXPECT_EQ(canonical_dump(parse_json(R"({"b":1,"a":[true,null,"x"]})")), R"({"a":[true,null,"x"],"b":1})");
}

}  // namespace
