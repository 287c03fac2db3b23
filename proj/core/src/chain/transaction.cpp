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

#include "meshchain/chain/transaction.hpp"

namespace meshchain::chain {
namespace {

Json preimage_json(const std::optional<Digest>& parent, const mesh::MeshDelta& delta,
                   std::string_view author, std::int64_t timestamp) {
  return Json{{"author", std::string(author)},
              {"delta", mesh::to_json(delta)},
              {"parent_tx_id", parent ? Json(parent->hex()) : Json(nullptr)},
              {"timestamp", timestamp}};
}

bool valid_utf8(std::string_view s) {
  try {
    (void)Json(std::string(s)).dump();
    return true;
  } catch (const Json::exception&) {
    return false;
  }
}

}  // namespace

std::string tx_preimage(const std::optional<Digest>& parent, const mesh::MeshDelta& delta,
                        std::string_view author, std::int64_t timestamp) {
  return canonical_dump(preimage_json(parent, delta, author, timestamp));
}

Digest tx_id(const std::optional<Digest>& parent, const mesh::MeshDelta& delta,
             std::string_view author, std::int64_t timestamp) {
  return sha256(tx_preimage(parent, delta, author, timestamp));
}

Transaction make_transaction(std::optional<Digest> parent, mesh::MeshDelta delta,
                             std::string author, std::int64_t timestamp) {
  Transaction tx;
  tx.id = tx_id(parent, delta, author, timestamp);
  tx.parent = std::move(parent);
  tx.delta = std::move(delta);
  tx.author = std::move(author);
  tx.timestamp = timestamp;
  return tx;
}

std::vector<std::string> check_transaction(const Transaction& tx) {
  std::vector<std::string> problems;
  const std::string tag = "tx " + tx.id.short_hex() + ": ";
  if (tx.author.size() > kMaxAuthorBytes) {
    problems.push_back(tag + "author exceeds " + std::to_string(kMaxAuthorBytes) + " bytes");
  }
  if (!valid_utf8(tx.author)) {
    problems.push_back(tag + "author is not valid UTF-8");
    return problems;
  }
  if (auto p = mesh::delta_problem(tx.delta)) problems.push_back(tag + "malformed delta: " + *p);
  if (!tx.is_root() && tx.delta.empty()) problems.push_back(tag + "empty delta on a non-root transaction");
  if (tx_id(tx.parent, tx.delta, tx.author, tx.timestamp) != tx.id) {
    problems.push_back(tag + "id does not match content");
  }
  return problems;
}

Json digest_to_json(const Digest& d) { return d.hex(); }

Digest digest_from_json(const Json& j, const std::string& path) {
  const auto& text = codec::as_string(j, path);
  auto d = Digest::from_hex(text);
  if (!d) throw CodecError(path + ": expected 64 lowercase hex characters");
  return *d;
}

Json to_json(const Transaction& tx) {
  Json j = preimage_json(tx.parent, tx.delta, tx.author, tx.timestamp);
  j["id"] = tx.id.hex();
  return j;
}

Transaction transaction_from_json(const Json& j, const std::string& path) {
  codec::expect_keys(j, {"author", "delta", "id", "parent_tx_id", "timestamp"}, path);
  Transaction tx;
  tx.id = digest_from_json(j["id"], path + ".id");
  if (!j["parent_tx_id"].is_null()) {
    tx.parent = digest_from_json(j["parent_tx_id"], path + ".parent_tx_id");
  }
  tx.delta = mesh::delta_from_json(j["delta"], path + ".delta");
  tx.author = codec::as_string(j["author"], path + ".author");
  tx.timestamp = codec::as_integer(j["timestamp"], path + ".timestamp");
  return tx;
}

}  // namespace meshchain::chain
