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

#include <cstdint>
#include <string>
#include <vector>

#include "seqauction/rational.hpp"

namespace seqauction {

/// Bundles are bitmasks over item indices; markets are capped at 63 items
/// (explicit set-value tables are capped much lower, at 16).
using ItemSet = std::uint64_t;

inline bool set_contains(ItemSet s, int item) { return (s >> item) & 1u; }
inline ItemSet set_with(ItemSet s, int item) { return s | (ItemSet{1} << item); }

enum class ValuationKind { kAdditive, kUnitDemand, kCoverage, kExplicit };

const char* to_string(ValuationKind kind);

/// One buyer's valuation over sets of items.
///
/// Additive and unit-demand valuations are given by per-item values.
/// Coverage valuations are weighted set covers: each item covers a subset of
/// a small ground set with non-negative element weights, and the value of a
/// bundle is the total weight covered; they are submodular by construction.
/// Explicit valuations store the full 2^m table.
class Valuation {
 public:
  static Valuation Additive(std::vector<Rational> item_values);
  static Valuation UnitDemand(std::vector<Rational> item_values);
  static Valuation Coverage(int num_items, std::vector<Rational> element_weights,
                            std::vector<std::uint32_t> item_covers);
  static Valuation Explicit(int num_items, std::vector<Rational> table);

  ValuationKind kind() const { return kind_; }
  int num_items() const { return num_items_; }

  Rational value(ItemSet bundle) const;

  /// Per-item value; only for additive and unit-demand kinds.
  const Rational& item_value(int item) const;
  const std::vector<Rational>& item_values() const;

  const std::vector<Rational>& element_weights() const { return weights_; }
  const std::vector<std::uint32_t>& item_covers() const { return covers_; }
  const std::vector<Rational>& table() const { return table_; }

 private:
  Valuation() = default;

  ValuationKind kind_ = ValuationKind::kAdditive;
  int num_items_ = 0;
  std::vector<Rational> item_values_;       // additive, unit-demand
  std::vector<Rational> weights_;           // coverage: ground-set weights
  std::vector<std::uint32_t> covers_;       // coverage: per-item element mask
  std::vector<Rational> table_;             // explicit: 2^m entries
};

/// Partial or complete assignment of items to buyers. kUnsold marks items not
/// (yet) assigned. Doubles as the game-state key: nodes of the sequential
/// auction are identified by the allocation reached so far.
class Allocation {
 public:
  static constexpr int kUnsold = -1;

  Allocation() = default;
  explicit Allocation(int num_items) : winner_(num_items, kUnsold) {}

  int items() const { return static_cast<int>(winner_.size()); }
  bool sold(int item) const { return winner_[item] != kUnsold; }
  int winner(int item) const { return winner_[item]; }
  int sold_count() const;
  bool complete() const { return sold_count() == items(); }

  void assign(int item, int buyer);
  /// Functional update; allocations used as node keys stay immutable.
  Allocation assigned(int item, int buyer) const;

  ItemSet bundle(int buyer) const;
  std::vector<int> bundle_items(int buyer) const;
  ItemSet sold_set() const;

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.winner_ == b.winner_;
  }
  friend bool operator<(const Allocation& a, const Allocation& b) {
    return a.winner_ < b.winner_;
  }

  std::string str() const;

 private:
  std::vector<std::int16_t> winner_;
};

/// A market: n buyers with valuations over the same m items.
class Market {
 public:
  Market(std::vector<Valuation> buyers, int num_items, std::string label = "");

  int buyers() const { return static_cast<int>(vals_.size()); }
  int items() const { return num_items_; }
  const Valuation& valuation(int buyer) const { return vals_[buyer]; }
  const std::string& label() const { return label_; }

  bool all_kind(ValuationKind kind) const;

  /// v_i(S).
  Rational value(int buyer, ItemSet bundle) const;

  /// Welfare of a (possibly partial) allocation: sum of bundle values.
  Rational welfare(const Allocation& alloc) const;

 private:
  std::vector<Valuation> vals_;
  int num_items_;
  std::string label_;
};

/// Clamped marginal value of unsold item `item` for a unit-demand buyer given
/// the items already allocated in `sold`:
///   max(0, v_{i,j} - max over items the buyer already won).
/// Requires a unit-demand valuation; `marginal_value` is the kind-generic
/// counterpart and agrees with this on unit-demand inputs.
Rational residual_value(const Market& market, int buyer, int item,
                        const Allocation& sold);

/// v_i(X_i ∪ {item}) - v_i(X_i) where X_i is the buyer's bundle in `state`.
/// Works for every valuation kind; `item` must be unsold.
Rational marginal_value(const Market& market, int buyer, int item,
                        const Allocation& state);

}  // namespace seqauction
