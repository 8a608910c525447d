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

#include <vector>

#include "seqauction/game.hpp"
#include "seqauction/market.hpp"

namespace seqauction {

// Set-valued backward induction over bids restricted to a rational grid: at
// every node all pure stage equilibria of the one-item first-price game are
// enumerated against every combination of continuation equilibria of the
// children, and every resulting outcome propagates. Desk-scale only; work is
// metered and aborts with BudgetExceeded.
//
// The per-stage enumeration covers all stage Nash outcomes for priority-style
// tie rules (the winner of a tie set also wins in any subset containing it):
// a stage price needs one price-holding bid at the price (tie resolved to the
// winner) or one grid step below it (tie resolved away from the winner), and
// zeroing all other losing bids changes no best response.

struct OracleOptions {
  Rational delta{1, 8};
  /// Restrict every buyer's bids to their optimistic-conservative ceiling,
  /// with ceilings computed from the candidate continuation itself.
  bool oc_filter = false;
  /// Work budget in candidate evaluations.
  long long budget = 400'000'000;
};

struct OracleOutcome {
  Allocation allocation;
  std::vector<Rational> prices;
};

Rational outcome_revenue(const OracleOutcome& outcome);

/// All distinct grid-SPE outcomes (allocation + exact prices), canonically
/// ordered.
std::vector<OracleOutcome> brute_force_spe(const Market& market,
                                           const SellerPolicy& policy,
                                           const OracleOptions& options);

/// Partition into classes: same allocation and per-item prices within delta
/// of the class representative.
std::vector<std::vector<OracleOutcome>> group_outcomes(
    const std::vector<OracleOutcome>& outcomes, const Rational& delta);

/// True iff all outcomes share one allocation and prices pairwise within
/// delta per item.
bool single_outcome_class(const std::vector<OracleOutcome>& outcomes,
                          const Rational& delta);

}  // namespace seqauction
