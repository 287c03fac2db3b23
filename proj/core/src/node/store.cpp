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

#include "meshchain/node/store.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace meshchain::node {

namespace fs = std::filesystem;

void save_store(const fs::path& data_dir, const StoredChain& store) {
  fs::create_directories(data_dir);
  const Json doc{{"blocks", chain::chain_to_json(store.blocks)},
                 {"format", kFormatVersion},
                 {"tip", store.tip.hex()}};
  const fs::path target = data_dir / kStoreFileName;
  const fs::path temp = data_dir / (std::string(kStoreFileName) + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + temp.string());
    out << canonical_dump(doc);
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + temp.string());
  }
  fs::rename(temp, target);
}

StoredChain load_store(const fs::path& data_dir) {
  const fs::path file = data_dir / kStoreFileName;
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();

  const Json doc = parse_json(buffer.str());
  codec::expect_keys(doc, {"blocks", "format", "tip"}, "store");
  if (codec::as_string(doc["format"], "store.format") != kFormatVersion) {
    throw CodecError("store.format: unsupported version");
  }
  StoredChain store;
  store.blocks = chain::chain_from_json(doc["blocks"], "store.blocks");
  store.tip = chain::digest_from_json(doc["tip"], "store.tip");
  return store;
}

bool store_exists(const fs::path& data_dir) {
  return fs::exists(data_dir / kStoreFileName);
}

}  // namespace meshchain::node
