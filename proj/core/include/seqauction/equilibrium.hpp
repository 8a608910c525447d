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

#include <optional>
#include <vector>

#include "seqauction/game.hpp"
#include "seqauction/market.hpp"

namespace seqauction {

// Equilibrium verification over the full deviation-reachable tree: every node
// reachable when at most one buyer deviates per round, i.e. every allocation
// the policy can produce.

/// Optimistic-conservative bid ceiling: the most a buyer can bid for the item
/// at a node such that winning it (and then following the profile) leaves
/// them no worse than the node's on-path continuation:
///   max(0, marginal + continuation-after-winning - on-path continuation).
/// The after-winning term matters: a buyer who snatches an item may still
/// collect surplus later, and for additive buyers this reduces the ceiling to
/// the plain per-item value.
Rational oc_cap(const Rational& marginal, const Rational& cont_after_win,
                const Rational& cont_on_path);

/// The same ceiling read off a profile's recorded continuation utilities.
Rational oc_cap(const Market& market, const SellerPolicy& policy,
                const StrategyProfile& profile, const Allocation& node, int buyer);

struct OcViolation {
  Allocation node;
  int buyer;
  int item;
  Rational bid;
  Rational cap;
};

struct OcReport {
  bool ok = false;
  std::optional<OcViolation> witness;
};

/// Checks every bid at every deviation-reachable node against its ceiling.
OcReport is_optimistic_conservative(const Market& market, const SellerPolicy& policy,
                                    const StrategyProfile& profile);

struct DeviationWitness {
  Allocation node;
  int buyer;
  Rational bid;
  Rational gain;
  bool grid_marginal;  // gain within delta*m of zero: likely a grid artifact
};

struct EquilibriumReport {
  enum class Verdict { kSpe, kNotSpe };
  Verdict verdict = Verdict::kNotSpe;
  std::optional<DeviationWitness> witness;
  long long nodes_checked = 0;

  bool is_spe() const { return verdict == Verdict::kSpe; }
};

/// Subgame-perfection on the bid grid: at every reachable node, every buyer's
/// unilateral deviations are tested against the profile's continuation. Own
/// utility is linear in the own bid within the win and lose regimes, so the
/// sweep over {0, delta, ..., ceiling} collapses to the regime boundaries:
/// exact ties at the relevant opposing bid and one grid step above it (plus
/// dropping out, for the winner). Verdict is SPE-on-grid iff no deviation
/// strictly gains.
EquilibriumReport verify_spe(const Market& market, const SellerPolicy& policy,
                             const StrategyProfile& profile, const Rational& delta);

/// Utilities earned from `node` onward when `buyer` bids `bid` there and
/// everyone (including the deviator) follows the profile afterwards.
std::vector<Rational> replay_with_deviation(const Market& market,
                                            const SellerPolicy& policy,
                                            const StrategyProfile& profile,
                                            const Allocation& node, int buyer,
                                            const Rational& bid);

}  // namespace seqauction
