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

#include "seqauction/walrasian.hpp"

#include <algorithm>
#include <stdexcept>

namespace seqauction {

namespace {

void check_unit_demand(const Market& market, const char* what) {
  if (!market.all_kind(ValuationKind::kUnitDemand)) {
    throw std::invalid_argument(std::string(what) + ": all buyers must be unit-demand");
  }
}

Rational bundle_utility(const ValueMatrix& values, const Allocation& alloc,
                        const std::vector<Rational>& prices, int buyer) {
  Rational best, paid;
  for (int j = 0; j < alloc.items(); ++j) {
    if (alloc.winner(j) == buyer) {
      if (values[buyer][j] > best) best = values[buyer][j];
      paid += prices[j];
    }
  }
  return best - paid;
}

}  // namespace

Rational WalrasianEquilibrium::revenue() const {
  Rational sum;
  for (const auto& p : prices) sum += p;
  return sum;
}

std::pair<Allocation, Rational> optimal_assignment(const ValueMatrix& values) {
  auto res = lexicographic_assignment(values);
  Allocation alloc(static_cast<int>(values[0].size()));
  for (int j = 0; j < alloc.items(); ++j) {
    if (res.item_to_buyer[j] >= 0) alloc.assign(j, res.item_to_buyer[j]);
  }
  return {alloc, res.welfare};
}

std::pair<Allocation, Rational> optimal_assignment(const Market& unit_demand) {
  check_unit_demand(unit_demand, "optimal_assignment");
  return optimal_assignment(unit_demand_matrix(unit_demand));
}

WalrasianEquilibrium minimal_walrasian(const ValueMatrix& values) {
  const int n = static_cast<int>(values.size());
  const int m = static_cast<int>(values[0].size());
  auto matching = lexicographic_assignment(values);

  WalrasianEquilibrium we;
  we.welfare = matching.welfare;
  we.matched_item = matching.buyer_to_item;
  we.prices.assign(m, Rational(0));
  we.allocation = Allocation(m);

  for (int j = 0; j < m; ++j) {
    const int i = matching.item_to_buyer[j];
    if (i >= 0) {
      // Winner's payment: externality imposed on the others.
      const Rational without = assignment_welfare_without(values, i);
      we.prices[j] = without - (matching.welfare - values[i][j]);
      we.allocation.assign(j, i);
    } else {
      // Free item: price 0, handed to whoever values it most.
      int best = 0;
      for (int i2 = 1; i2 < n; ++i2) {
        if (values[i2][j] > values[best][j]) best = i2;
      }
      we.allocation.assign(j, best);
    }
  }

  we.utilities.resize(n);
  for (int i = 0; i < n; ++i) {
    we.utilities[i] = bundle_utility(values, we.allocation, we.prices, i);
  }

  const auto check = is_walrasian(values, we.allocation, we.prices);
  if (!check.ok) {
    throw std::logic_error("minimal_walrasian: construction failed validation");
  }
  return we;
}

WalrasianEquilibrium minimal_walrasian(const Market& unit_demand) {
  check_unit_demand(unit_demand, "minimal_walrasian");
  return minimal_walrasian(unit_demand_matrix(unit_demand));
}

WalrasianEquilibrium additive_walrasian(const Market& additive) {
  if (!additive.all_kind(ValuationKind::kAdditive)) {
    throw std::invalid_argument("additive_walrasian: all buyers must be additive");
  }
  const int n = additive.buyers();
  const int m = additive.items();
  WalrasianEquilibrium we;
  we.prices.assign(m, Rational(0));
  we.allocation = Allocation(m);
  we.matched_item.assign(n, -1);
  for (int j = 0; j < m; ++j) {
    int winner = 0;
    for (int i = 1; i < n; ++i) {
      if (additive.valuation(i).item_value(j) > additive.valuation(winner).item_value(j)) {
        winner = i;
      }
    }
    Rational second;
    for (int i = 0; i < n; ++i) {
      if (i == winner) continue;
      if (additive.valuation(i).item_value(j) > second) {
        second = additive.valuation(i).item_value(j);
      }
    }
    we.allocation.assign(j, winner);
    we.prices[j] = second;
  }
  we.utilities.assign(n, Rational(0));
  for (int j = 0; j < m; ++j) {
    const int w = we.allocation.winner(j);
    we.utilities[w] += additive.valuation(w).item_value(j) - we.prices[j];
  }
  we.welfare = additive.welfare(we.allocation);
  return we;
}

WalrasianCheck is_walrasian(const ValueMatrix& values, const Allocation& alloc,
                            const std::vector<Rational>& prices) {
  const int n = static_cast<int>(values.size());
  const int m = static_cast<int>(values[0].size());
  if (alloc.items() != m || static_cast<int>(prices.size()) != m) {
    throw std::invalid_argument("is_walrasian: size mismatch");
  }
  for (int j = 0; j < m; ++j) {
    if (prices[j].sign() < 0) throw std::invalid_argument("is_walrasian: negative price");
    if (!alloc.sold(j)) throw std::invalid_argument("is_walrasian: every item must be assigned");
  }
  // For unit-demand buyers the best deviation is empty or a single item plus
  // any free items, so singleton checks cover all bundles.
  for (int i = 0; i < n; ++i) {
    const Rational u = bundle_utility(values, alloc, prices, i);
    if (u.sign() < 0) return {false, BestResponseWitness{i, -1}};
    for (int j = 0; j < m; ++j) {
      if (values[i][j] - prices[j] > u) return {false, BestResponseWitness{i, j}};
    }
  }
  return {true, std::nullopt};
}

WalrasianCheck is_walrasian(const Market& market, const Allocation& alloc,
                            const std::vector<Rational>& prices) {
  const int n = market.buyers();
  const int m = market.items();
  if (alloc.items() != m || static_cast<int>(prices.size()) != m) {
    throw std::invalid_argument("is_walrasian: size mismatch");
  }
  for (int j = 0; j < m; ++j) {
    if (prices[j].sign() < 0) throw std::invalid_argument("is_walrasian: negative price");
    if (!alloc.sold(j)) throw std::invalid_argument("is_walrasian: every item must be assigned");
  }
  if (m > 16) throw TooLarge("is_walrasian: bundle enumeration capped at 16 items");
  auto price_of = [&](ItemSet s) {
    Rational sum;
    for (int j = 0; j < m; ++j) {
      if (set_contains(s, j)) sum += prices[j];
    }
    return sum;
  };
  for (int i = 0; i < n; ++i) {
    const ItemSet held = alloc.bundle(i);
    const Rational u = market.value(i, held) - price_of(held);
    ItemSet best_bundle = held;
    Rational best = u;
    for (ItemSet s = 0; s < (ItemSet{1} << m); ++s) {
      const Rational alt = market.value(i, s) - price_of(s);
      if (alt > best) {
        best = alt;
        best_bundle = s;
      }
    }
    if (best > u) {
      int witness_item = -1;
      for (int j = 0; j < m; ++j) {
        if (set_contains(best_bundle, j)) { witness_item = j; break; }
      }
      return {false, BestResponseWitness{i, witness_item}};
    }
  }
  return {true, std::nullopt};
}

SupportRelation supporters(const ValueMatrix& values, const WalrasianEquilibrium& we) {
  const int n = static_cast<int>(values.size());
  const int m = static_cast<int>(values[0].size());
  SupportRelation supp;
  for (int j = 0; j < m; ++j) {
    if (we.prices[j].sign() <= 0) continue;
    const int winner = we.allocation.winner(j);
    int found = -1;
    for (int i = 0; i < n && found < 0; ++i) {
      if (i == winner) continue;
      // Exact indifference; for unmatched buyers utility is 0, so this is
      // v_{i,j} == p_j.
      if (we.utilities[i] == values[i][j] - we.prices[j]) found = i;
    }
    if (found < 0) {
      throw PositivePriceUnsupported("item " + std::to_string(j) +
                                     " has a positive price but no supporter");
    }
    supp[j] = found;
  }
  return supp;
}

std::vector<int> support_order(const WalrasianEquilibrium& we,
                               const SupportRelation& supp) {
  const int m = we.allocation.items();
  const int n = static_cast<int>(we.utilities.size());

  std::vector<int> tail;  // zero-priced items, sold last in ascending order
  std::vector<int> pending;
  for (int j = 0; j < m; ++j) {
    if (we.prices[j].sign() > 0) {
      pending.push_back(j);
      if (!supp.count(j)) {
        throw std::invalid_argument("support_order: missing supporter for item " +
                                    std::to_string(j));
      }
    } else {
      tail.push_back(j);
    }
  }

  // done[i]: every item buyer i wins is already placed (or i wins none).
  std::vector<bool> done(n, true);
  for (int j : pending) done[we.allocation.winner(j)] = false;

  std::vector<int> reversed;  // first selected ends up latest in the order
  std::vector<bool> placed(m, false);
  while (reversed.size() < pending.size()) {
    int pick = -1;
    for (int j : pending) {
      if (placed[j]) continue;
      if (!done[we.allocation.winner(j)] && done[supp.at(j)]) {
        pick = j;
        break;
      }
    }
    if (pick < 0) {
      throw NoProgressError("support_order: construction stalled (input not minimal?)");
    }
    placed[pick] = true;
    done[we.allocation.winner(pick)] = true;
    reversed.push_back(pick);
  }

  std::vector<int> order(reversed.rbegin(), reversed.rend());
  order.insert(order.end(), tail.begin(), tail.end());
  return order;
}

bool is_complete(const ValueMatrix& values) {
  const int n = static_cast<int>(values.size());
  const int m = static_cast<int>(values[0].size());
  if (m > 16) throw TooLarge("is_complete: exhaustive check capped at 16 items");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!values[i][j].is_zero() && values[i][j] < Rational(1)) {
        throw std::invalid_argument("is_complete: values must be 0 or >= 1");
      }
    }
  }
  std::vector<std::uint32_t> interested(m, 0);  // item -> buyer mask
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      if (values[i][j] >= Rational(1)) interested[j] |= 1u << i;
    }
  }
  const std::uint32_t full = (m == 32) ? ~0u : (1u << m) - 1;
  std::vector<std::uint32_t> buyers_of(full + 1, 0);
  for (std::uint32_t t = 1; t <= full; ++t) {
    const int low = std::countr_zero(t);
    buyers_of[t] = buyers_of[t & (t - 1)] | interested[low];
    if (std::popcount(t) >= std::popcount(buyers_of[t])) return false;
  }
  return true;
}

bool is_complete(const Market& unit_demand) {
  check_unit_demand(unit_demand, "is_complete");
  return is_complete(unit_demand_matrix(unit_demand));
}

ValueMatrix unit_demand_matrix(const Market& market) {
  check_unit_demand(market, "unit_demand_matrix");
  ValueMatrix values(market.buyers());
  for (int i = 0; i < market.buyers(); ++i) {
    values[i] = market.valuation(i).item_values();
  }
  return values;
}

ResidualMarket residual_market(const Market& market, const Allocation& sold) {
  ResidualMarket out;
  for (int j = 0; j < market.items(); ++j) {
    if (!sold.sold(j)) out.items.push_back(j);
  }
  out.values.assign(market.buyers(), std::vector<Rational>(out.items.size()));
  for (int i = 0; i < market.buyers(); ++i) {
    for (std::size_t c = 0; c < out.items.size(); ++c) {
      out.values[i][c] = residual_value(market, i, out.items[c], sold);
    }
  }
  return out;
}

}  // namespace seqauction
