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

#include "seqauction/rational.hpp"

namespace seqauction {

/// Row-major value matrix: values[buyer][item] >= 0.
using ValueMatrix = std::vector<std::vector<Rational>>;

struct AssignmentResult {
  std::vector<int> item_to_buyer;  // -1 = unmatched
  std::vector<int> buyer_to_item;  // -1 = unmatched
  Rational welfare;
};

/// Maximum-weight bipartite matching over exact rationals (augmenting-path
/// Hungarian on the padded square matrix). Deterministic but not canonical
/// under ties.
AssignmentResult max_weight_assignment(const ValueMatrix& values);

/// Same optimum, but canonical under ties: for each item in index order the
/// smallest buyer index that still permits an optimal completion is fixed
/// (unmatched only if no buyer does). Generic inputs pay nothing extra: only
/// pairs tight in the optimal dual are probed.
AssignmentResult lexicographic_assignment(const ValueMatrix& values);

/// Optimal welfare with the given buyer removed; used for per-winner payments.
Rational assignment_welfare_without(const ValueMatrix& values, int dropped_buyer);

}  // namespace seqauction
