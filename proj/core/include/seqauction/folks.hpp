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

#include "seqauction/market.hpp"

namespace seqauction {

// Folk-theorem-style characterization of the supportable (allocation, price)
// pairs of the sequential first-price auction: a pair is an equilibrium
// outcome for selling order pi iff no buyer ever gains by following the path,
// snatching the item on sale at its price, and going silent afterwards.

/// Slack certificate for one (allocation, prices, order) triple.
///
/// slack[i][k]: buyer i's final utility minus what i would get by playing the
/// path through position k-1, taking the k-th item sold at its price, and
/// bidding zero afterwards. The certificate is valid iff every final utility
/// is non-negative (the hypothesis) and every slack is >= 0.
struct FolksCertificate {
  bool hypothesis_ok = false;
  std::vector<Rational> final_utilities;
  std::vector<std::vector<Rational>> slack;  // buyer x position
  bool valid = false;
  std::optional<std::pair<int, int>> witness;  // (buyer, position) of first violation
};

FolksCertificate folks_check(const Market& market, const Allocation& omega,
                             const std::vector<Rational>& prices,
                             const std::vector<int>& order);

/// First selling order (in lexicographic enumeration) whose certificate is
/// valid, or nullopt after exhausting all m! permutations — in which case no
/// pure equilibrium with this allocation and these prices exists. Throws
/// TooLarge for m > 8.
std::optional<std::vector<int>> folks_search(const Market& market,
                                             const Allocation& omega,
                                             const std::vector<Rational>& prices);

}  // namespace seqauction
