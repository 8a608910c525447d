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

#include "seqauction/game.hpp"

#include <algorithm>
#include <stdexcept>

#include "seqauction/assignment.hpp"
#include "seqauction/walrasian.hpp"

namespace seqauction {

StrategyProfile::StrategyProfile(Generator gen)
    : gen_(std::move(gen)), cache_(std::make_shared<Cache>()) {
  if (!gen_) throw std::invalid_argument("StrategyProfile: null generator");
}

StrategyProfile::StrategyProfile(std::map<Allocation, NodeAction> table)
    : cache_(std::make_shared<Cache>()) {
  auto shared = std::make_shared<std::map<Allocation, NodeAction>>(std::move(table));
  gen_ = [shared](const Allocation& node) -> NodeAction {
    auto it = shared->find(node);
    if (it == shared->end()) {
      throw ProfileIncomplete("profile has no action at node " + node.str());
    }
    return it->second;
  };
}

const NodeAction& StrategyProfile::at(const Allocation& node) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->memo.find(node);
    if (it != cache_->memo.end()) return *it->second;
  }
  // Compute outside the lock: generators may recurse into at(). A racing
  // duplicate computation is benign (generators are deterministic).
  auto value = std::make_shared<const NodeAction>(gen_(node));
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto [it, inserted] = cache_->memo.emplace(node, std::move(value));
  return *it->second;
}

int resolve_winner(const SellerPolicy& policy, const Allocation& node, int item,
                   const std::vector<Rational>& bids) {
  Rational best;
  bool first = true;
  for (const auto& b : bids) {
    if (first || b > best) best = b;
    first = false;
  }
  std::vector<int> top;
  for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
    if (bids[i] == best) top.push_back(i);
  }
  if (top.size() == 1) return top[0];
  const int winner = policy.tie_break(node, item, top);
  if (std::find(top.begin(), top.end(), winner) == top.end()) {
    throw std::logic_error("tie_break returned a non-top bidder");
  }
  return winner;
}

Outcome play(const Market& market, const SellerPolicy& policy,
             const StrategyProfile& profile) {
  const int n = market.buyers();
  const int m = market.items();
  Outcome out;
  out.allocation = Allocation(m);
  out.prices.assign(m, Rational(0));
  std::vector<Rational> paid(n, Rational(0));

  for (int round = 0; round < m; ++round) {
    const int item = policy.next_item(out.allocation);
    if (item < 0 || item >= m || out.allocation.sold(item)) {
      throw std::logic_error("SellerPolicy::next_item returned a sold or bad item");
    }
    const NodeAction& act = profile.at(out.allocation);
    if (static_cast<int>(act.bids.size()) != n) {
      throw std::invalid_argument("play: bid vector size mismatch");
    }
    const int winner = resolve_winner(policy, out.allocation, item, act.bids);
    out.prices[item] = act.bids[winner];
    paid[winner] += act.bids[winner];
    out.allocation.assign(item, winner);
  }

  out.utilities.resize(n);
  for (int i = 0; i < n; ++i) {
    out.utilities[i] = market.value(i, out.allocation.bundle(i)) - paid[i];
    out.revenue += paid[i];
  }
  out.welfare = market.welfare(out.allocation);
  return out;
}

Rational utility(const Outcome& outcome, int buyer) { return outcome.utilities.at(buyer); }
Rational revenue(const Outcome& outcome) { return outcome.revenue; }
Rational welfare(const Outcome& outcome) { return outcome.welfare; }

Rational optimal_welfare(const Market& market) {
  if (market.all_kind(ValuationKind::kUnitDemand)) {
    return optimal_assignment(market).second;
  }
  const int n = market.buyers();
  const int m = market.items();
  double states = 1;
  for (int j = 0; j < m; ++j) states *= n;
  if (states > 1e7) {
    throw BudgetExceeded("optimal_welfare: n^m enumeration too large");
  }
  // Values are monotone, so assigning every item to somebody is never worse
  // than leaving it unsold.
  Rational best;
  Allocation alloc(m);
  auto rec = [&](auto&& self, int item) -> void {
    if (item == m) {
      const Rational w = market.welfare(alloc);
      if (w > best) best = w;
      return;
    }
    for (int b = 0; b < n; ++b) {
      alloc.assign(item, b);
      self(self, item + 1);
    }
  };
  rec(rec, 0);
  return best;
}

PoaResult poa(const Market& market, const Outcome& outcome) {
  PoaResult res;
  res.optimal = optimal_welfare(market);
  if (outcome.welfare.is_zero()) {
    if (res.optimal.sign() > 0) {
      res.infinite = true;
      return res;
    }
    res.ratio = Rational(1);
    return res;
  }
  res.ratio = res.optimal / outcome.welfare;
  return res;
}

TieBreak max_tiebreak_rule(const Market& market) {
  for (int i = 0; i < market.buyers(); ++i) {
    const auto kind = market.valuation(i).kind();
    if (kind != ValuationKind::kAdditive && kind != ValuationKind::kUnitDemand) {
      throw std::invalid_argument("max_tiebreak_rule: per-item values required");
    }
  }
  return [&market](const Allocation&, int item, const std::vector<int>& top) {
    int best = top[0];
    for (int i : top) {
      if (market.valuation(i).item_value(item) > market.valuation(best).item_value(item)) {
        best = i;
      }
    }
    return best;
  };
}

TieBreak max_marginal_tiebreak(const Market& market) {
  return [&market](const Allocation& node, int item, const std::vector<int>& top) {
    int best = top[0];
    Rational best_marg = marginal_value(market, best, item, node);
    for (std::size_t k = 1; k < top.size(); ++k) {
      const Rational marg = marginal_value(market, top[k], item, node);
      if (marg > best_marg) {
        best = top[k];
        best_marg = marg;
      }
    }
    return best;
  };
}

TieBreak lowest_index_tiebreak() {
  return [](const Allocation&, int, const std::vector<int>& top) { return top[0]; };
}

std::function<int(const Allocation&)> ascending_order() {
  return [](const Allocation& node) {
    for (int j = 0; j < node.items(); ++j) {
      if (!node.sold(j)) return j;
    }
    throw std::logic_error("ascending_order: no unsold item left");
  };
}

std::function<int(const Allocation&)> fixed_order(std::vector<int> order) {
  return [order = std::move(order)](const Allocation& node) {
    for (int j : order) {
      if (!node.sold(j)) return j;
    }
    throw std::logic_error("fixed_order: no unsold item left");
  };
}

}  // namespace seqauction
