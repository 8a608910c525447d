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

#include "seqauction/folks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "seqauction/errors.hpp"

namespace seqauction {

namespace {

void validate_inputs(const Market& market, const Allocation& omega,
                     const std::vector<Rational>& prices,
                     const std::vector<int>* order) {
  const int m = market.items();
  if (omega.items() != m || static_cast<int>(prices.size()) != m) {
    throw std::invalid_argument("folks: size mismatch");
  }
  for (int j = 0; j < m; ++j) {
    if (!omega.sold(j)) throw std::invalid_argument("folks: allocation must be complete");
    if (prices[j].sign() < 0) throw std::invalid_argument("folks: negative price");
  }
  if (order) {
    std::vector<bool> seen(m, false);
    if (static_cast<int>(order->size()) != m) {
      throw std::invalid_argument("folks: order must be a permutation of all items");
    }
    for (int j : *order) {
      if (j < 0 || j >= m || seen[j]) {
        throw std::invalid_argument("folks: order must be a permutation of all items");
      }
      seen[j] = true;
    }
  }
}

}  // namespace

FolksCertificate folks_check(const Market& market, const Allocation& omega,
                             const std::vector<Rational>& prices,
                             const std::vector<int>& order) {
  validate_inputs(market, omega, prices, &order);
  const int n = market.buyers();
  const int m = market.items();

  FolksCertificate cert;
  cert.final_utilities.resize(n);
  cert.hypothesis_ok = true;
  for (int i = 0; i < n; ++i) {
    Rational paid;
    for (int j = 0; j < m; ++j) {
      if (omega.winner(j) == i) paid += prices[j];
    }
    cert.final_utilities[i] = market.value(i, omega.bundle(i)) - paid;
    if (cert.final_utilities[i].sign() < 0) cert.hypothesis_ok = false;
  }
  if (!cert.hypothesis_ok) {
    cert.valid = false;
    return cert;
  }

  cert.slack.assign(n, std::vector<Rational>(m));
  cert.valid = true;
  for (int i = 0; i < n; ++i) {
    ItemSet along = 0;   // items i wins among the first k sold
    Rational paid_along;
    for (int k = 0; k < m; ++k) {
      const int item = order[k];
      // Deviation: follow the path, snatch the k-th item at its price, then
      // bid zero forever.
      const Rational snatch =
          market.value(i, set_with(along, item)) - prices[item] - paid_along;
      cert.slack[i][k] = cert.final_utilities[i] - snatch;
      if (cert.slack[i][k].sign() < 0 && cert.valid) {
        cert.valid = false;
        cert.witness = {i, k};
      }
      if (omega.winner(item) == i) {
        along = set_with(along, item);
        paid_along += prices[item];
      }
    }
  }
  return cert;
}

std::optional<std::vector<int>> folks_search(const Market& market,
                                             const Allocation& omega,
                                             const std::vector<Rational>& prices) {
  validate_inputs(market, omega, prices, nullptr);
  const int m = market.items();
  if (m > 8) throw TooLarge("folks_search: exhaustive search capped at 8 items");
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  do {
    if (folks_check(market, omega, prices, order).valid) return order;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

}  // namespace seqauction
