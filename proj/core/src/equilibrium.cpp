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

#include "seqauction/equilibrium.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace seqauction {

namespace {

// Continuation utilities by replaying the profile, memoized per node. The
// verifier trusts the play-out (bids + tie rule), not the stored
// continuation, so inconsistent profiles are still judged by what they do.
class ReplayTable {
 public:
  ReplayTable(const Market& market, const SellerPolicy& policy,
              const StrategyProfile& profile)
      : market_(market), policy_(policy), profile_(profile) {}

  const std::vector<Rational>& at(const Allocation& node) {
    auto it = memo_.find(node);
    if (it != memo_.end()) return it->second;
    std::vector<Rational> cont(market_.buyers(), Rational(0));
    if (!node.complete()) {
      const int item = policy_.next_item(node);
      const NodeAction& act = profile_.at(node);
      const int w = resolve_winner(policy_, node, item, act.bids);
      const Allocation child = node.assigned(item, w);
      cont = at(child);
      cont[w] += marginal_value(market_, w, item, node) - act.bids[w];
    }
    return memo_.emplace(node, std::move(cont)).first->second;
  }

 private:
  const Market& market_;
  const SellerPolicy& policy_;
  const StrategyProfile& profile_;
  std::map<Allocation, std::vector<Rational>> memo_;
};

template <typename Fn>
void for_each_reachable(const Market& market, const SellerPolicy& policy, Fn&& fn) {
  std::map<Allocation, bool> seen;
  std::vector<Allocation> stack{Allocation(market.items())};
  while (!stack.empty()) {
    Allocation node = stack.back();
    stack.pop_back();
    if (node.complete() || seen[node]) continue;
    seen[node] = true;
    const int item = policy.next_item(node);
    if (!fn(node, item)) return;
    for (int b = 0; b < market.buyers(); ++b) {
      stack.push_back(node.assigned(item, b));
    }
  }
}

}  // namespace

Rational oc_cap(const Rational& marginal, const Rational& cont_after_win,
                const Rational& cont_on_path) {
  Rational cap = marginal + cont_after_win - cont_on_path;
  return cap.sign() > 0 ? cap : Rational(0);
}

Rational oc_cap(const Market& market, const SellerPolicy& policy,
                const StrategyProfile& profile, const Allocation& node, int buyer) {
  const int item = policy.next_item(node);
  const NodeAction& here = profile.at(node);
  if (static_cast<int>(here.continuation.size()) != market.buyers()) {
    throw std::invalid_argument("oc_cap: profile is missing continuation utilities");
  }
  const Allocation won = node.assigned(item, buyer);
  const Rational after =
      won.complete() ? Rational(0) : profile.at(won).continuation[buyer];
  return oc_cap(marginal_value(market, buyer, item, node), after,
                here.continuation[buyer]);
}

OcReport is_optimistic_conservative(const Market& market, const SellerPolicy& policy,
                                    const StrategyProfile& profile) {
  OcReport report;
  report.ok = true;
  for_each_reachable(market, policy, [&](const Allocation& node, int item) {
    const NodeAction& act = profile.at(node);
    for (int i = 0; i < market.buyers(); ++i) {
      const Rational cap = oc_cap(market, policy, profile, node, i);
      if (act.bids[i] > cap) {
        report.ok = false;
        report.witness = OcViolation{node, i, item, act.bids[i], cap};
        return false;
      }
    }
    return true;
  });
  return report;
}

std::vector<Rational> replay_with_deviation(const Market& market,
                                            const SellerPolicy& policy,
                                            const StrategyProfile& profile,
                                            const Allocation& node, int buyer,
                                            const Rational& bid) {
  if (node.complete()) throw std::invalid_argument("replay_with_deviation: leaf node");
  const int item = policy.next_item(node);
  std::vector<Rational> bids = profile.at(node).bids;
  bids[buyer] = bid;
  const int w = resolve_winner(policy, node, item, bids);
  ReplayTable replay(market, policy, profile);
  std::vector<Rational> cont = replay.at(node.assigned(item, w));
  cont[w] += marginal_value(market, w, item, node) - bids[w];
  return cont;
}

EquilibriumReport verify_spe(const Market& market, const SellerPolicy& policy,
                             const StrategyProfile& profile, const Rational& delta) {
  if (delta.sign() <= 0) throw std::invalid_argument("verify_spe: delta must be > 0");
  const int n = market.buyers();
  const Rational grid_slack = delta * Rational(market.items());

  ReplayTable replay(market, policy, profile);
  EquilibriumReport report;
  report.verdict = EquilibriumReport::Verdict::kSpe;

  for_each_reachable(market, policy, [&](const Allocation& node, int item) {
    ++report.nodes_checked;
    const NodeAction& act = profile.at(node);
    const int w = resolve_winner(policy, node, item, act.bids);
    const std::vector<Rational>& base = replay.at(node);

    auto try_bid = [&](int i, const Rational& x) {
      if (x.sign() < 0 || x == act.bids[i]) return true;
      std::vector<Rational> bids = act.bids;
      bids[i] = x;
      const int w2 = resolve_winner(policy, node, item, bids);
      Rational gained = replay.at(node.assigned(item, w2))[i] - base[i];
      if (w2 == i) gained += marginal_value(market, i, item, node) - x;
      if (gained.sign() > 0) {
        report.verdict = EquilibriumReport::Verdict::kNotSpe;
        report.witness = DeviationWitness{node, i, x, gained, gained <= grid_slack};
        return false;
      }
      return true;
    };

    for (int i = 0; i < n; ++i) {
      // Top of the other bids: the threshold between losing and winning.
      Rational others;
      bool any = false;
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        if (!any || act.bids[k] > others) others = act.bids[k];
        any = true;
      }
      if (!any) others = Rational(0);
      if (i == w) {
        // Lose outright, tie at the runner-up bid, or shade down to just
        // above it. Anything else is dominated by one of these.
        if (!try_bid(i, Rational(0))) return false;
        if (others < act.bids[i]) {
          if (!try_bid(i, others)) return false;
          if (others + delta < act.bids[i] && !try_bid(i, others + delta)) return false;
        }
      } else {
        // Tie the current price exactly, or beat it by one grid step.
        if (!try_bid(i, others)) return false;
        if (!try_bid(i, others + delta)) return false;
      }
    }
    return true;
  });
  return report;
}

}  // namespace seqauction
