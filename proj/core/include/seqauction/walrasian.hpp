// Copyright 2026 The Authors.
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

#include <map>
#include <optional>
#include <vector>

#include "seqauction/assignment.hpp"
#include "seqauction/errors.hpp"
#include "seqauction/market.hpp"

namespace seqauction {

// Walrasian machinery for unit-demand (assignment) markets. Markets enter
// either as a Market whose buyers are all unit-demand, or directly as a value
// matrix (the strategy layer feeds residual-value matrices of submarkets).

/// Prices, a full allocation and the derived buyer utilities.
///
/// Every item is assigned: items the welfare matching leaves unmatched carry
/// price zero and are handed to the buyer valuing them most (ties to the
/// lowest index); best responses are unaffected. `matched_item` records the
/// underlying matching, which is what prices are computed from.
struct WalrasianEquilibrium {
  std::vector<Rational> prices;
  Allocation allocation;
  std::vector<int> matched_item;  // buyer -> item, -1 if unmatched
  std::vector<Rational> utilities;
  Rational welfare;

  Rational revenue() const;
};

/// Maximum-weight matching wrapped in allocation form; unmatched items stay
/// kUnsold here. Canonical under ties (lexicographic by item, then buyer).
std::pair<Allocation, Rational> optimal_assignment(const ValueMatrix& values);
std::pair<Allocation, Rational> optimal_assignment(const Market& unit_demand);

/// Coordinate-wise minimal Walrasian prices for a unit-demand market,
/// computed as each winner's per-item payment from n+1 assignment solves
/// (drop the winner, re-solve) and validated against `is_walrasian`.
WalrasianEquilibrium minimal_walrasian(const ValueMatrix& values);
WalrasianEquilibrium minimal_walrasian(const Market& unit_demand);

/// Minimal Walrasian equilibrium of an additive market: every item goes to a
/// highest-value buyer at the second-highest value.
WalrasianEquilibrium additive_walrasian(const Market& additive);

struct BestResponseWitness {
  int buyer;
  int item;  // -1: the buyer prefers dropping its bundle
};

struct WalrasianCheck {
  bool ok = false;
  std::optional<BestResponseWitness> witness;
};

/// Best-response check: every buyer's assigned bundle maximizes utility at
/// these prices (unmatched buyers are priced out of every item). Requires
/// prices >= 0 and a fully assigned allocation.
WalrasianCheck is_walrasian(const ValueMatrix& values, const Allocation& alloc,
                            const std::vector<Rational>& prices);

/// Kind-generic variant (bundle deviations enumerated for coverage/explicit
/// buyers; m <= 16 there).
WalrasianCheck is_walrasian(const Market& market, const Allocation& alloc,
                            const std::vector<Rational>& prices);

/// item -> supporting buyer, for every positive-price item.
/// A supporter is a non-winner exactly indifferent to the item (or exactly
/// priced out, if unmatched); ties resolve to the lowest buyer index.
/// Throws PositivePriceUnsupported when a positive price has none, which
/// signals a non-minimal input.
using SupportRelation = std::map<int, int>;
SupportRelation supporters(const ValueMatrix& values, const WalrasianEquilibrium& we);

/// Selling order under which each positive-price item's supporter wins only
/// strictly later items (or none). Built backwards: zero-priced items last in
/// ascending index order, then repeatedly prepend an item whose winner is
/// still pending and whose supporter is already done. Throws NoProgressError
/// when the construction stalls (non-minimal input).
std::vector<int> support_order(const WalrasianEquilibrium& we,
                               const SupportRelation& supp);

/// Hall-type strict expansion |T| < |B(T)| over all non-empty item sets,
/// for markets whose values are all 0 or >= 1. Exhaustive; m <= 16.
bool is_complete(const ValueMatrix& values);
bool is_complete(const Market& unit_demand);

/// Per-item values of a unit-demand market as a matrix.
ValueMatrix unit_demand_matrix(const Market& market);

/// Residual submarket after `sold`: clamped marginal values of the remaining
/// items. Column c of `values` is global item `items[c]`.
struct ResidualMarket {
  ValueMatrix values;
  std::vector<int> items;
};
ResidualMarket residual_market(const Market& market, const Allocation& sold);

}  // namespace seqauction
