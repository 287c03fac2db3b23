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

// On-disk block store: one canonical JSON document,
//   {"blocks":[...],"format":"1","tip":"<hash>"}
// replaced atomically (write to a sibling temp file, then rename).

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "meshchain/chain/block.hpp"

namespace meshchain::node {

inline constexpr const char* kStoreFileName = "chain.json";
inline constexpr const char* kFormatVersion = "1";

struct StoredChain {
  std::vector<chain::Block> blocks;
  chain::Digest tip;
};

/// Throws std::runtime_error on I/O failure.
void save_store(const std::filesystem::path& data_dir, const StoredChain& store);

/// Reads the document back. Performs no chain validation; that is the
/// caller's job. Throws CodecError or std::runtime_error.
StoredChain load_store(const std::filesystem::path& data_dir);

bool store_exists(const std::filesystem::path& data_dir);

}  // namespace meshchain::node
