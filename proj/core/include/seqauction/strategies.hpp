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

#include <memory>
#include <string>
#include <vector>

#include "seqauction/folks.hpp"
#include "seqauction/game.hpp"
#include "seqauction/walrasian.hpp"

namespace seqauction {

// Constructive strategy trees. Each constructor returns a committed seller
// policy plus a complete strategy profile (lazily materialized over
// deviation-reachable nodes) whose continuation utilities come from replaying
// the profile itself, so they are consistent by construction.

struct StrategyTree {
  std::shared_ptr<const Market> market;
  SellerPolicy policy;
  StrategyProfile profile;
  std::string provenance;

  StrategyTree(std::shared_ptr<const Market> mkt, SellerPolicy pol,
               StrategyProfile prof, std::string tag)
      : market(std::move(mkt)),
        policy(std::move(pol)),
        profile(std::move(prof)),
        provenance(std::move(tag)) {}
};

/// Per-node view of a Unit-Wlrs-Eq tree: the recomputed residual equilibrium,
/// which remaining columns it covers, and the support order in global item
/// indices (the node sells sale_order.front()).
struct UnitWlrsNodeInfo {
  WalrasianEquilibrium we;      // over residual columns
  std::vector<int> columns;     // column -> global item index
  std::vector<int> sale_order;  // global item indices, first = on sale
};

struct UnitWlrsTree {
  StrategyTree tree;
  std::function<UnitWlrsNodeInfo(const Allocation&)> node_info;
};

/// The Walrasian subgame-perfect strategy for unit-demand buyers. At every
/// node: recompute the minimal Walrasian equilibrium of the residual market,
/// sell the first item of its support order, and have every buyer bid their
/// residual value minus their equilibrium utility (clamped at zero) — which
/// makes the designated winner and the supporter both bid the Walrasian
/// price. Ties break toward the node's Walrasian winner.
UnitWlrsTree unit_wlrs_eq(const Market& unit_demand);

/// The unique optimistic-conservative outcome for additive buyers under max
/// tie-breaking: every item goes to its highest-value buyer at the
/// second-highest value, independent of history and order.
struct AdditiveEquilibrium {
  Outcome outcome;
  StrategyTree tree;
};
AdditiveEquilibrium additive_outcome(const Market& additive);

/// The low-welfare equilibrium of the two-buyer identical-items market:
/// while the low buyer holds everything both bid 1 (ties to the low buyer
/// except on the last item); once the high buyer holds anything both bid m.
StrategyTree bad_spe_additive(int m);

/// Same shape with bids of eps, on the market whose last item the low buyer
/// values at eps; revenue eps*m against Walrasian revenue m-1+eps.
StrategyTree low_revenue_spe(int m, const Rational& eps);

/// All items to the lowest-index buyer at price zero; valid whenever every
/// singleton is worthless. Off-path play follows the characterization proof's
/// strategies (everyone bids the maximum marginal value).
StrategyTree nonsingleton_spe(const Market& market);

/// Greedy order by maximal marginal value; on path the maximizer wins at its
/// own marginal, so all buyer utilities are zero and the revenue is the
/// greedy welfare (at least half the optimum for submodular valuations).
struct GreedyEquilibrium {
  std::vector<int> order;
  StrategyTree tree;
};
GreedyEquilibrium greedy_submodular(const Market& coverage);

/// The order_matters market's two faces: a bad-order certificate (identity
/// order, chain allocation, revenue 1) and the good (reverse) order.
struct OrderMattersPair {
  std::vector<int> bad_order;
  Allocation bad_allocation;
  std::vector<Rational> bad_prices;
  std::vector<int> good_order;
};
OrderMattersPair order_matters_pair(int m, const Rational& eps);

/// Strategies realizing an accepted characterization certificate: on the
/// path everyone bids the item's price (ties to its designated winner); off
/// the path everyone bids the maximum marginal value at the node, which nets
/// every buyer zero from there on.
StrategyTree folks_profile(const Market& market, const Allocation& omega,
                           const std::vector<Rational>& prices,
                           const std::vector<int>& order,
                           std::string provenance = "folks");

/// Per-node JSON dump ({allocation, item, bids, winner, continuation}) of all
/// deviation-reachable nodes, capped at `max_nodes`.
std::string export_tree_json(const StrategyTree& tree, int max_nodes = 10000);

}  // namespace seqauction
