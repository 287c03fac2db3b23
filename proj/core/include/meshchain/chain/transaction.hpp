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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "meshchain/chain/digest.hpp"
#include "meshchain/mesh/codec.hpp"
#include "meshchain/mesh/delta.hpp"

namespace meshchain::chain {

inline constexpr std::size_t kMaxAuthorBytes = 256;

/// One committed mesh modification. Transactions form a tree through
/// `parent`; a transaction without a parent applies its delta to the empty
/// mesh and starts a new model.
struct Transaction {
  Digest id;
  std::optional<Digest> parent;
  mesh::MeshDelta delta;
  std::string author;
  std::int64_t timestamp = 0;

  bool is_root() const { return !parent.has_value(); }

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

using TxIdSet = std::unordered_set<Digest>;

/// Canonical JSON of {author, delta, parent_tx_id, timestamp}; the id preimage.
std::string tx_preimage(const std::optional<Digest>& parent, const mesh::MeshDelta& delta,
                        std::string_view author, std::int64_t timestamp);

Digest tx_id(const std::optional<Digest>& parent, const mesh::MeshDelta& delta,
             std::string_view author, std::int64_t timestamp);

/// Builds a transaction with its id filled in.
Transaction make_transaction(std::optional<Digest> parent, mesh::MeshDelta delta,
                             std::string author, std::int64_t timestamp);

/// Self-contained checks: id recomputation, author length and encoding,
/// script ordering, non-empty delta for non-root transactions. Returns every
/// problem found, prefixed with the transaction's short id.
std::vector<std::string> check_transaction(const Transaction& tx);

Json to_json(const Transaction& tx);
/// Strict decode; does not verify the id (see check_transaction).
Transaction transaction_from_json(const Json& j, const std::string& path = "transaction");

Json digest_to_json(const Digest& d);
Digest digest_from_json(const Json& j, const std::string& path);

}  // namespace meshchain::chain
