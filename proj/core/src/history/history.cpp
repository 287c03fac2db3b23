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

#include "meshchain/history/history.hpp"

#include <algorithm>
#include <unordered_set>

#include "meshchain/mesh/delta.hpp"

namespace meshchain::history {

const TxLocation* TxIndex::find(const Digest& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

chain::TxIdSet TxIndex::ids() const {
  chain::TxIdSet out;
  out.reserve(entries_.size());
  for (const auto& [id, loc] : entries_) out.insert(id);
  return out;
}

TxIndex rebuild_index(std::span<const Block> chain) {
  TxIndex index;
  for (const auto& block : chain) {
    for (const auto& tx : block.transactions) {
      index.entries_.emplace(tx.id, TxLocation{tx, block.hash, block.height});
      index.order_.push_back(tx.id);
    }
  }
  return index;
}

std::vector<Transaction> ancestry_path(const TxLookup& lookup, const Digest& tx) {
  std::vector<Transaction> path;
  const Transaction* current = lookup(tx);
  if (current == nullptr) {
    throw HistoryError(HistoryError::Kind::unknown_tx, tx, "unknown transaction " + tx.hex());
  }
  std::unordered_set<Digest> visited;
  while (true) {
    if (!visited.insert(current->id).second) {
      throw HistoryError(HistoryError::Kind::broken_link, current->id,
                         "parent cycle at transaction " + current->id.hex());
    }
    path.push_back(*current);
    if (current->is_root()) break;
    const Transaction* parent = lookup(*current->parent);
    if (parent == nullptr) {
      throw HistoryError(HistoryError::Kind::broken_link, current->id,
                         "transaction " + current->id.hex() + " references missing parent " +
                             current->parent->hex());
    }
    current = parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Transaction> ancestry_path(const TxIndex& index, const Digest& tx) {
  return ancestry_path(
      [&index](const Digest& id) -> const Transaction* {
        const auto* loc = index.find(id);
        return loc ? &loc->tx : nullptr;
      },
      tx);
}

mesh::Mesh reconstruct_mesh(const TxLookup& lookup, const Digest& tx) {
  mesh::Mesh current;
  for (const auto& step : ancestry_path(lookup, tx)) {
    try {
      current = mesh::patch_mesh(current, step.delta);
    } catch (const mesh::DeltaError& e) {
      throw HistoryError(HistoryError::Kind::delta_failure, step.id,
                         "delta of transaction " + step.id.hex() + " does not apply: " + e.what());
    }
  }
  return current;
}

mesh::Mesh reconstruct_mesh(const TxIndex& index, const Digest& tx) {
  return reconstruct_mesh(
      [&index](const Digest& id) -> const Transaction* {
        const auto* loc = index.find(id);
        return loc ? &loc->tx : nullptr;
      },
      tx);
}

}  // namespace meshchain::history
