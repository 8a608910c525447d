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

#include "seqauction/strategies.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "seqauction/scenarios.hpp"

namespace seqauction {

namespace {

// One node's move under a stationary rule: the item on sale, everyone's bid,
// and the designated winner.
struct Move {
  int item = -1;
  std::vector<Rational> bids;
  int winner = -1;
};

using MoveRule = std::function<Move(const Market&, const Allocation&)>;

// Shared state behind a constructed tree: memoized moves plus replay-based
// continuation utilities.
class RuleTree : public std::enable_shared_from_this<RuleTree> {
 public:
  RuleTree(Market market, MoveRule rule)
      : market_(std::make_shared<const Market>(std::move(market))),
        rule_(std::move(rule)) {}

  const std::shared_ptr<const Market>& market() const { return market_; }

  Move move(const Allocation& node) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = moves_.find(node);
      if (it != moves_.end()) return it->second;
    }
    Move mv = rule_(*market_, node);
    std::lock_guard<std::mutex> lock(mu_);
    return moves_.emplace(node, std::move(mv)).first->second;
  }

  // Utilities gained from `node` to the end when everyone follows the rule.
  std::vector<Rational> continuation(const Allocation& node) {
    const int n = market_->buyers();
    std::vector<Rational> cont(n, Rational(0));
    Allocation cur = node;
    while (!cur.complete()) {
      const Move mv = move(cur);
      cont[mv.winner] +=
          marginal_value(*market_, mv.winner, mv.item, cur) - mv.bids[mv.winner];
      cur = cur.assigned(mv.item, mv.winner);
    }
    return cont;
  }

  StrategyProfile make_profile() {
    auto self = shared_from_this();
    return StrategyProfile([self](const Allocation& node) {
      Move mv = self->move(node);
      NodeAction act;
      act.bids = std::move(mv.bids);
      act.designated_winner = mv.winner;
      act.continuation = self->continuation(node);
      return act;
    });
  }

  // Policy selling the rule's item, breaking ties toward the designated
  // winner with `fallback` for everything else.
  SellerPolicy designated_policy(TieBreak fallback) {
    auto self = shared_from_this();
    SellerPolicy policy;
    policy.next_item = [self](const Allocation& node) { return self->move(node).item; };
    policy.tie_break = [self, fallback = std::move(fallback)](
                           const Allocation& node, int item,
                           const std::vector<int>& top) {
      const Move mv = self->move(node);
      if (mv.item == item &&
          std::find(top.begin(), top.end(), mv.winner) != top.end()) {
        return mv.winner;
      }
      return fallback(node, item, top);
    };
    return policy;
  }

  StrategyTree to_tree(std::string provenance, TieBreak fallback) {
    return StrategyTree(market_, designated_policy(std::move(fallback)),
                        make_profile(), std::move(provenance));
  }

 private:
  std::shared_ptr<const Market> market_;
  MoveRule rule_;
  std::mutex mu_;
  std::map<Allocation, Move> moves_;
};

int argmax_marginal(const Market& market, int item, const Allocation& node) {
  int best = 0;
  Rational best_val = marginal_value(market, 0, item, node);
  for (int i = 1; i < market.buyers(); ++i) {
    const Rational v = marginal_value(market, i, item, node);
    if (v > best_val) {
      best = i;
      best_val = v;
    }
  }
  return best;
}

}  // namespace

UnitWlrsTree unit_wlrs_eq(const Market& unit_demand) {
  if (!unit_demand.all_kind(ValuationKind::kUnitDemand)) {
    throw std::invalid_argument("unit_wlrs_eq: all buyers must be unit-demand");
  }

  struct NodeCache {
    std::mutex mu;
    std::map<Allocation, UnitWlrsNodeInfo> memo;
  };
  auto cache = std::make_shared<NodeCache>();

  auto info_at = [cache](const Market& market, const Allocation& node) {
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->memo.find(node);
      if (it != cache->memo.end()) return it->second;
    }
    UnitWlrsNodeInfo info;
    auto res = residual_market(market, node);
    info.columns = res.items;
    info.we = minimal_walrasian(res.values);
    const auto supp = supporters(res.values, info.we);
    for (int col : support_order(info.we, supp)) {
      info.sale_order.push_back(res.items[col]);
    }
    std::lock_guard<std::mutex> lock(cache->mu);
    return cache->memo.emplace(node, std::move(info)).first->second;
  };

  MoveRule rule = [info_at](const Market& market, const Allocation& node) {
    const UnitWlrsNodeInfo info = info_at(market, node);
    const int item = info.sale_order.front();
    const int col = static_cast<int>(
        std::find(info.columns.begin(), info.columns.end(), item) -
        info.columns.begin());
    Move mv;
    mv.item = item;
    mv.winner = info.we.allocation.winner(col);
    mv.bids.reserve(market.buyers());
    for (int i = 0; i < market.buyers(); ++i) {
      // Residual value minus equilibrium utility, clamped; the winner and the
      // supporter both land exactly on the Walrasian price.
      Rational bid = residual_value(market, i, item, node) - info.we.utilities[i];
      if (bid.sign() < 0) bid = Rational(0);
      mv.bids.push_back(std::move(bid));
    }
    return mv;
  };

  auto core = std::make_shared<RuleTree>(unit_demand, std::move(rule));
  StrategyTree tree = core->to_tree("unit_wlrs_eq", lowest_index_tiebreak());
  auto market_ptr = core->market();
  return UnitWlrsTree{std::move(tree),
                      [info_at, market_ptr](const Allocation& node) {
                        return info_at(*market_ptr, node);
                      }};
}

AdditiveEquilibrium additive_outcome(const Market& additive) {
  const auto we = additive_walrasian(additive);  // validates the kind

  MoveRule rule = [we](const Market& market, const Allocation& node) {
    Move mv;
    mv.item = ascending_order()(node);
    mv.winner = we.allocation.winner(mv.item);
    const Rational& price = we.prices[mv.item];
    for (int i = 0; i < market.buyers(); ++i) {
      const Rational& v = market.valuation(i).item_value(mv.item);
      mv.bids.push_back(v < price ? v : price);
    }
    return mv;
  };

  auto core = std::make_shared<RuleTree>(additive, std::move(rule));
  // The theorem's committed tie rule: the highest per-item value wins ties.
  SellerPolicy policy;
  {
    auto self = core;
    policy.next_item = [self](const Allocation& node) { return self->move(node).item; };
    policy.tie_break = max_tiebreak_rule(*core->market());
  }
  StrategyTree tree(core->market(), std::move(policy), core->make_profile(),
                    "additive_outcome");
  Outcome outcome = play(*tree.market, tree.policy, tree.profile);
  return AdditiveEquilibrium{std::move(outcome), std::move(tree)};
}

namespace {

// Shared shape of the two-buyer threat equilibria: while buyer B (index 1)
// has won everything so far, both bid `low` and ties go to B except on the
// last item; once A holds anything, both bid `high` with ties to A.
StrategyTree threat_tree(Market market, Rational low, Rational high,
                         std::string provenance) {
  const int m = market.items();
  MoveRule rule = [low, high, m](const Market&, const Allocation& node) {
    bool b_regime = true;
    for (int j = 0; j < m; ++j) {
      if (node.sold(j) && node.winner(j) != 1) b_regime = false;
    }
    Move mv;
    mv.item = ascending_order()(node);
    if (b_regime) {
      mv.bids = {low, low};
      mv.winner = (mv.item < m - 1) ? 1 : 0;
    } else {
      mv.bids = {high, high};
      mv.winner = 0;
    }
    return mv;
  };
  auto core = std::make_shared<RuleTree>(std::move(market), std::move(rule));
  return core->to_tree(std::move(provenance), lowest_index_tiebreak());
}

}  // namespace

StrategyTree bad_spe_additive(int m) {
  return threat_tree(poa_additive_market(m), Rational(1), Rational(m),
                     "bad_spe_additive");
}

StrategyTree low_revenue_spe(int m, const Rational& eps) {
  return threat_tree(low_revenue_market(m, eps), eps, Rational(m),
                     "low_revenue_spe");
}

StrategyTree nonsingleton_spe(const Market& market) {
  for (int i = 0; i < market.buyers(); ++i) {
    for (int j = 0; j < market.items(); ++j) {
      if (!market.value(i, ItemSet{1} << j).is_zero()) {
        throw std::invalid_argument("nonsingleton_spe: buyer " + std::to_string(i) +
                                    " has a positive singleton value");
      }
    }
  }
  Allocation omega(market.items());
  for (int j = 0; j < market.items(); ++j) omega.assign(j, 0);
  std::vector<Rational> zeros(market.items(), Rational(0));
  std::vector<int> order(market.items());
  std::iota(order.begin(), order.end(), 0);
  return folks_profile(market, omega, zeros, order, "nonsingleton_spe");
}

GreedyEquilibrium greedy_submodular(const Market& coverage) {
  if (!coverage.all_kind(ValuationKind::kCoverage)) {
    throw std::invalid_argument("greedy_submodular: all buyers must be coverage");
  }
  const int m = coverage.items();

  // Greedy path: repeatedly the (buyer, item) pair of maximal marginal value,
  // ties by buyer then item index.
  std::vector<int> order;
  Allocation path(m);
  for (int step = 0; step < m; ++step) {
    int best_i = -1, best_j = -1;
    Rational best_v;
    for (int i = 0; i < coverage.buyers(); ++i) {
      for (int j = 0; j < m; ++j) {
        if (path.sold(j)) continue;
        const Rational v = marginal_value(coverage, i, j, path);
        if (best_i < 0 || v > best_v) {
          best_i = i;
          best_j = j;
          best_v = v;
        }
      }
    }
    order.push_back(best_j);
    path.assign(best_j, best_i);
  }

  MoveRule rule = [order](const Market& mkt, const Allocation& node) {
    Move mv;
    mv.item = fixed_order(order)(node);
    mv.winner = argmax_marginal(mkt, mv.item, node);
    const Rational top = marginal_value(mkt, mv.winner, mv.item, node);
    mv.bids.assign(mkt.buyers(), top);
    return mv;
  };
  auto core = std::make_shared<RuleTree>(coverage, std::move(rule));
  StrategyTree tree =
      core->to_tree("greedy_submodular", max_marginal_tiebreak(*core->market()));
  return GreedyEquilibrium{std::move(order), std::move(tree)};
}

OrderMattersPair order_matters_pair(int m, const Rational& eps) {
  order_matters_market(m, eps);  // validates parameters
  OrderMattersPair out;
  out.bad_order.resize(m);
  std::iota(out.bad_order.begin(), out.bad_order.end(), 0);
  out.bad_allocation = Allocation(m);
  for (int j = 0; j < m; ++j) out.bad_allocation.assign(j, j + 1);
  out.bad_prices.assign(m, Rational(0));
  out.bad_prices[0] = Rational(1);
  out.good_order.resize(m);
  for (int k = 0; k < m; ++k) out.good_order[k] = m - 1 - k;
  return out;
}

StrategyTree folks_profile(const Market& market, const Allocation& omega,
                           const std::vector<Rational>& prices,
                           const std::vector<int>& order,
                           std::string provenance) {
  if (!folks_check(market, omega, prices, order).valid) {
    throw std::invalid_argument("folks_profile: certificate is not valid");
  }

  MoveRule rule = [omega, prices, order](const Market& mkt, const Allocation& node) {
    const int k = node.sold_count();
    Move mv;
    mv.item = order[k];
    bool on_path = true;
    for (int t = 0; t < k; ++t) {
      if (node.winner(order[t]) != omega.winner(order[t])) on_path = false;
    }
    if (on_path) {
      mv.bids.assign(mkt.buyers(), prices[mv.item]);
      mv.winner = omega.winner(mv.item);
    } else {
      // Off the path everyone bids the top marginal value; the maximizer wins
      // at its own marginal and nets zero, like everyone else from here on.
      mv.winner = argmax_marginal(mkt, mv.item, node);
      mv.bids.assign(mkt.buyers(), marginal_value(mkt, mv.winner, mv.item, node));
    }
    return mv;
  };
  auto core = std::make_shared<RuleTree>(market, std::move(rule));
  return core->to_tree(std::move(provenance), max_marginal_tiebreak(*core->market()));
}

std::string export_tree_json(const StrategyTree& tree, int max_nodes) {
  const Market& market = *tree.market;
  std::ostringstream out;
  out << "{\"provenance\":\"" << tree.provenance << "\",\"nodes\":[";
  std::set<Allocation> seen;
  std::vector<Allocation> frontier{Allocation(market.items())};
  int emitted = 0;
  bool first = true;
  while (!frontier.empty() && emitted < max_nodes) {
    Allocation node = frontier.back();
    frontier.pop_back();
    if (node.complete() || !seen.insert(node).second) continue;
    const int item = tree.policy.next_item(node);
    const NodeAction& act = tree.profile.at(node);
    if (!first) out << ",";
    first = false;
    out << "{\"allocation\":\"" << node.str() << "\",\"item\":" << item
        << ",\"winner\":" << act.designated_winner << ",\"bids\":[";
    for (std::size_t i = 0; i < act.bids.size(); ++i) {
      if (i) out << ",";
      out << "\"" << act.bids[i].str() << "\"";
    }
    out << "],\"continuation\":[";
    for (std::size_t i = 0; i < act.continuation.size(); ++i) {
      if (i) out << ",";
      out << "\"" << act.continuation[i].str() << "\"";
    }
    out << "]}";
    ++emitted;
    for (int b = 0; b < market.buyers(); ++b) {
      frontier.push_back(node.assigned(item, b));
    }
  }
  out << "]}";
  return out.str();
}

}  // namespace seqauction
