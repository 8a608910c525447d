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

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "seqauction/errors.hpp"
#include "seqauction/market.hpp"

namespace seqauction {

// The sequential first-price auction as an extensive-form game. Game state is
// the allocation reached so far; history enters only through it. The seller
// commits upfront to which item goes on sale at each state and how exact bid
// ties break, and is not a strategic player.

/// Seller's committed rules. `next_item` must return an unsold item;
/// `tie_break` must return a member of the tied top-bidder set. The library's
/// tie rules are priority-based (the chosen winner of a set also wins in any
/// subset containing it), which the verifier's pruned deviation sweep relies
/// on.
struct SellerPolicy {
  std::function<int(const Allocation&)> next_item;
  std::function<int(const Allocation&, int item, const std::vector<int>& top)> tie_break;
};

/// One node's move: every buyer's bid for the item on sale, the winner the
/// construction designates (a highest bidder, consistent with the tie rule),
/// and each buyer's continuation utility from this node onward (value added
/// minus payments made from here to the end of the game, on the profile's
/// path).
struct NodeAction {
  std::vector<Rational> bids;
  int designated_winner = -1;
  std::vector<Rational> continuation;
};

/// Strategy profile as a function of game state, memoized behind a
/// synchronized cache so deviation subtrees materialize lazily.
class StrategyProfile {
 public:
  using Generator = std::function<NodeAction(const Allocation&)>;

  explicit StrategyProfile(Generator gen);

  /// Explicit finite profile; querying outside the map raises
  /// ProfileIncomplete.
  explicit StrategyProfile(std::map<Allocation, NodeAction> table);

  const NodeAction& at(const Allocation& node) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<Allocation, std::shared_ptr<const NodeAction>> memo;
  };
  Generator gen_;
  std::shared_ptr<Cache> cache_;
};

struct Outcome {
  Allocation allocation;
  std::vector<Rational> prices;     // per item, the winning bid
  std::vector<Rational> utilities;  // per buyer: value of bundle - payments
  Rational revenue;
  Rational welfare;
};

/// Runs the auction: each round the policy picks the item, the profile
/// supplies bids, the highest bid wins (tie rule on exact ties) and the
/// winner pays their own bid.
Outcome play(const Market& market, const SellerPolicy& policy,
             const StrategyProfile& profile);

Rational utility(const Outcome& outcome, int buyer);
Rational revenue(const Outcome& outcome);
Rational welfare(const Outcome& outcome);

/// Exhaustive optimal welfare: assignment solver for unit-demand markets,
/// full n^m enumeration otherwise (bounded by ~10^7 states).
Rational optimal_welfare(const Market& market);

struct PoaResult {
  Rational optimal;
  bool infinite = false;  // zero outcome welfare against a positive optimum
  Rational ratio;         // meaningful when !infinite
};

PoaResult poa(const Market& market, const Outcome& outcome);

using TieBreak =
    std::function<int(const Allocation&, int item, const std::vector<int>& top)>;

/// Among tied top bidders, picks the one with the highest per-item value for
/// the item on sale; remaining ties go to the lowest index. Requires per-item
/// values (additive or unit-demand buyers).
TieBreak max_tiebreak_rule(const Market& market);

/// Ties go to the bidder with the highest marginal value at the node;
/// remaining ties to the lowest index. Works for every valuation kind.
TieBreak max_marginal_tiebreak(const Market& market);

/// Ties go to the lowest buyer index.
TieBreak lowest_index_tiebreak();

/// Sells unsold items in ascending index order.
std::function<int(const Allocation&)> ascending_order();

/// Sells items in the fixed order given (a permutation of all items).
std::function<int(const Allocation&)> fixed_order(std::vector<int> order);

/// Resolves one round: top bidders, then the tie rule if needed.
int resolve_winner(const SellerPolicy& policy, const Allocation& node, int item,
                   const std::vector<Rational>& bids);

}  // namespace seqauction
