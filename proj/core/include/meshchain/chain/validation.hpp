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

#include <span>
#include <string>
#include <vector>

#include "meshchain/chain/block.hpp"

namespace meshchain::chain {

using Violations = std::vector<std::string>;

/// Checks `block` as a child of `prev`, given the ids of every transaction
/// already on its branch. Checks run in this order and all failures are
/// collected: height continuity, prev_hash linkage, hash recomputation,
/// difficulty met, difficulty equal to the network constant, tx_ids match the
/// bodies, per-transaction checks (id recomputation and well-formedness), no
/// transaction already on the branch, parents resolvable (none, on the
/// branch, or earlier in this block). Pure; never throws on bad input.
Violations validate_block(const Block& block, const Block& prev, const TxIdSet& known_tx_ids,
                          unsigned network_difficulty);

/// Full validation from genesis: chain[0] must be the genesis block byte for
/// byte, then every block is checked against its predecessor.
Violations validate_chain(std::span<const Block> chain, unsigned network_difficulty);

}  // namespace meshchain::chain
