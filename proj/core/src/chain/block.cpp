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

#include "meshchain/chain/block.hpp"

namespace meshchain::chain {
namespace {

Json ids_to_json(const std::vector<Digest>& ids) {
  Json out = Json::array();
  for (const auto& id : ids) out.push_back(id.hex());
  return out;
}

Json header_json(const Block& b) {
  return Json{{"difficulty", b.difficulty}, {"height", b.height},
              {"nonce", b.nonce},           {"prev_hash", b.prev_hash.hex()},
              {"timestamp", b.timestamp},   {"tx_ids", ids_to_json(b.tx_ids)}};
}

Block make_genesis() {
  Block g;
  g.hash = block_hash(g);
  return g;
}

}  // namespace

std::string header_preimage(const Block& block) { return canonical_dump(header_json(block)); }

Digest block_hash(const Block& block) { return sha256(header_preimage(block)); }

const Block& genesis_block() {
  static const Block genesis = make_genesis();
  return genesis;
}

Json to_json(const Block& block) {
  Json j = header_json(block);
  j["hash"] = block.hash.hex();
  Json txs = Json::array();
  for (const auto& tx : block.transactions) txs.push_back(to_json(tx));
  j["transactions"] = std::move(txs);
  return j;
}

Block block_from_json(const Json& j, const std::string& path) {
  codec::expect_keys(j, {"difficulty", "hash", "height", "nonce", "prev_hash", "timestamp",
                         "transactions", "tx_ids"},
                     path);
  Block b;
  const auto difficulty = codec::as_unsigned(j["difficulty"], path + ".difficulty");
  if (difficulty > kMaxDifficulty) throw CodecError(path + ".difficulty: exceeds 255");
  b.difficulty = static_cast<unsigned>(difficulty);
  b.height = codec::as_unsigned(j["height"], path + ".height");
  b.nonce = codec::as_unsigned(j["nonce"], path + ".nonce");
  b.prev_hash = digest_from_json(j["prev_hash"], path + ".prev_hash");
  b.timestamp = codec::as_integer(j["timestamp"], path + ".timestamp");
  b.hash = digest_from_json(j["hash"], path + ".hash");
  const auto& ids = codec::as_array(j["tx_ids"], path + ".tx_ids");
  for (std::size_t i = 0; i < ids.size(); ++i) {
    b.tx_ids.push_back(digest_from_json(ids[i], path + ".tx_ids[" + std::to_string(i) + "]"));
  }
  const auto& txs = codec::as_array(j["transactions"], path + ".transactions");
  for (std::size_t i = 0; i < txs.size(); ++i) {
    b.transactions.push_back(
        transaction_from_json(txs[i], path + ".transactions[" + std::to_string(i) + "]"));
  }
  return b;
}

Json chain_to_json(const std::vector<Block>& chain) {
  Json out = Json::array();
  for (const auto& b : chain) out.push_back(to_json(b));
  return out;
}

std::vector<Block> chain_from_json(const Json& j, const std::string& path) {
  const auto& arr = codec::as_array(j, path);
  std::vector<Block> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(block_from_json(arr[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace meshchain::chain
