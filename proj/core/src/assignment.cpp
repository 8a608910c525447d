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

#include "seqauction/assignment.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace seqauction {

namespace {

struct HungarianSolution {
  std::vector<int> col_to_row;  // over the padded square, 0-indexed
  std::vector<Rational> row_potential;
  std::vector<Rational> col_potential;
};

// Min-cost perfect matching on the padded square via augmenting paths with
// potentials (Kuhn-Munkres). cost(i,j) = -value for real pairs, 0 for padding.
HungarianSolution solve_padded(const ValueMatrix& values, int n, int m) {
  const int N = std::max(n, m);
  auto cost = [&](int i, int j) -> Rational {
    if (i < n && j < m) return -values[i][j];
    return Rational(0);
  };

  // 1-indexed working arrays, as in the classic formulation.
  std::vector<Rational> u(N + 1), v(N + 1);
  std::vector<int> p(N + 1, 0), way(N + 1, 0);
  for (int i = 1; i <= N; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::optional<Rational>> minv(N + 1);
    std::vector<bool> used(N + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = 0;
      std::optional<Rational> delta;
      for (int j = 1; j <= N; ++j) {
        if (used[j]) continue;
        Rational cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= N; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  HungarianSolution out;
  out.col_to_row.assign(N, -1);
  for (int j = 1; j <= N; ++j) out.col_to_row[j - 1] = p[j] - 1;
  out.row_potential.assign(u.begin() + 1, u.end());
  out.col_potential.assign(v.begin() + 1, v.end());
  return out;
}

AssignmentResult from_padded(const ValueMatrix& values, int n, int m,
                             const std::vector<int>& col_to_row) {
  AssignmentResult res;
  res.item_to_buyer.assign(m, -1);
  res.buyer_to_item.assign(n, -1);
  for (int j = 0; j < m; ++j) {
    const int i = col_to_row[j];
    if (i >= 0 && i < n) {
      res.item_to_buyer[j] = i;
      res.buyer_to_item[i] = j;
      res.welfare += values[i][j];
    }
  }
  return res;
}

void validate(const ValueMatrix& values) {
  if (values.empty()) throw std::invalid_argument("assignment: empty matrix");
  const std::size_t m = values[0].size();
  if (m == 0) throw std::invalid_argument("assignment: no items");
  for (const auto& row : values) {
    if (row.size() != m) throw std::invalid_argument("assignment: ragged matrix");
    for (const auto& x : row) {
      if (x.sign() < 0) throw std::invalid_argument("assignment: negative value");
    }
  }
}

// Optimal welfare with some buyers/items forced or excluded.
Rational constrained_welfare(const ValueMatrix& values,
                             const std::vector<int>& item_fixed_to,  // -2 free, -1 unmatched, >=0 buyer
                             const std::vector<bool>& buyer_taken) {
  const int n = static_cast<int>(values.size());
  const int m = static_cast<int>(values[0].size());
  Rational fixed_value;
  std::vector<int> free_buyers, free_items;
  for (int i = 0; i < n; ++i) {
    if (!buyer_taken[i]) free_buyers.push_back(i);
  }
  for (int j = 0; j < m; ++j) {
    if (item_fixed_to[j] == -2) {
      free_items.push_back(j);
    } else if (item_fixed_to[j] >= 0) {
      fixed_value += values[item_fixed_to[j]][j];
    }
  }
  if (free_buyers.empty() || free_items.empty()) return fixed_value;
  ValueMatrix sub(free_buyers.size(), std::vector<Rational>(free_items.size()));
  for (std::size_t a = 0; a < free_buyers.size(); ++a) {
    for (std::size_t b = 0; b < free_items.size(); ++b) {
      sub[a][b] = values[free_buyers[a]][free_items[b]];
    }
  }
  return fixed_value + max_weight_assignment(sub).welfare;
}

}  // namespace

AssignmentResult max_weight_assignment(const ValueMatrix& values) {
  validate(values);
  const int n = static_cast<int>(values.size());
  const int m = static_cast<int>(values[0].size());
  const auto sol = solve_padded(values, n, m);
  return from_padded(values, n, m, sol.col_to_row);
}

AssignmentResult lexicographic_assignment(const ValueMatrix& values) {
  validate(values);
  const int n = static_cast<int>(values.size());
  const int m = static_cast<int>(values[0].size());
  const auto sol = solve_padded(values, n, m);
  auto base = from_padded(values, n, m, sol.col_to_row);

  std::vector<int> fixed(m, -2);
  std::vector<bool> taken(n, false);
  bool on_base = true;  // all fixes so far agree with the base matching
  for (int j = 0; j < m; ++j) {
    bool placed = false;
    for (int b = 0; b < n && !placed; ++b) {
      if (taken[b]) continue;
      // Pairs outside the optimal dual's tight set are in no optimal matching.
      if (sol.row_potential[b] + sol.col_potential[j] != -values[b][j]) continue;
      if (on_base && base.item_to_buyer[j] == b) {
        fixed[j] = b;
        taken[b] = true;
        placed = true;
        break;
      }
      auto trial = fixed;
      trial[j] = b;
      auto trial_taken = taken;
      trial_taken[b] = true;
      if (constrained_welfare(values, trial, trial_taken) == base.welfare) {
        fixed[j] = b;
        taken[b] = true;
        placed = true;
        on_base = on_base && base.item_to_buyer[j] == b;
      }
    }
    if (!placed) {
      fixed[j] = -1;  // unmatched in every consistent optimum
      on_base = on_base && base.item_to_buyer[j] == -1;
    }
  }

  AssignmentResult res;
  res.item_to_buyer.assign(m, -1);
  res.buyer_to_item.assign(n, -1);
  for (int j = 0; j < m; ++j) {
    if (fixed[j] >= 0) {
      res.item_to_buyer[j] = fixed[j];
      res.buyer_to_item[fixed[j]] = j;
      res.welfare += values[fixed[j]][j];
    }
  }
  if (res.welfare != base.welfare) {
    throw std::logic_error("lexicographic_assignment: welfare drifted");
  }
  return res;
}

Rational assignment_welfare_without(const ValueMatrix& values, int dropped_buyer) {
  const int n = static_cast<int>(values.size());
  if (n == 1) return Rational(0);
  ValueMatrix sub;
  sub.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i != dropped_buyer) sub.push_back(values[i]);
  }
  return max_weight_assignment(sub).welfare;
}

}  // namespace seqauction
