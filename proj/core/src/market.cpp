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

#include "seqauction/market.hpp"

#include <bit>
#include <stdexcept>

namespace seqauction {

namespace {

void check_nonnegative(const std::vector<Rational>& values, const char* what) {
  for (const auto& v : values) {
    if (v.sign() < 0) throw std::invalid_argument(std::string(what) + ": negative value");
  }
}

}  // namespace

const char* to_string(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kAdditive: return "additive";
    case ValuationKind::kUnitDemand: return "unit_demand";
    case ValuationKind::kCoverage: return "coverage";
    case ValuationKind::kExplicit: return "explicit";
  }
  return "?";
}

Valuation Valuation::Additive(std::vector<Rational> item_values) {
  check_nonnegative(item_values, "Additive");
  Valuation v;
  v.kind_ = ValuationKind::kAdditive;
  v.num_items_ = static_cast<int>(item_values.size());
  v.item_values_ = std::move(item_values);
  return v;
}

Valuation Valuation::UnitDemand(std::vector<Rational> item_values) {
  check_nonnegative(item_values, "UnitDemand");
  Valuation v;
  v.kind_ = ValuationKind::kUnitDemand;
  v.num_items_ = static_cast<int>(item_values.size());
  v.item_values_ = std::move(item_values);
  return v;
}

Valuation Valuation::Coverage(int num_items, std::vector<Rational> element_weights,
                              std::vector<std::uint32_t> item_covers) {
  check_nonnegative(element_weights, "Coverage");
  if (static_cast<int>(item_covers.size()) != num_items) {
    throw std::invalid_argument("Coverage: one cover mask per item required");
  }
  if (element_weights.size() > 32) {
    throw std::invalid_argument("Coverage: ground set capped at 32 elements");
  }
  const std::uint32_t universe =
      element_weights.size() == 32 ? ~0u : (1u << element_weights.size()) - 1;
  for (auto mask : item_covers) {
    if (mask & ~universe) throw std::invalid_argument("Coverage: cover outside ground set");
  }
  Valuation v;
  v.kind_ = ValuationKind::kCoverage;
  v.num_items_ = num_items;
  v.weights_ = std::move(element_weights);
  v.covers_ = std::move(item_covers);
  return v;
}

Valuation Valuation::Explicit(int num_items, std::vector<Rational> table) {
  if (num_items > 16) throw std::invalid_argument("Explicit: capped at 16 items");
  if (table.size() != (std::size_t{1} << num_items)) {
    throw std::invalid_argument("Explicit: table must have 2^m entries");
  }
  if (!table[0].is_zero()) throw std::invalid_argument("Explicit: v(empty) must be 0");
  check_nonnegative(table, "Explicit");
  Valuation v;
  v.kind_ = ValuationKind::kExplicit;
  v.num_items_ = num_items;
  v.table_ = std::move(table);
  return v;
}

Rational Valuation::value(ItemSet bundle) const {
  if (bundle >> num_items_) throw std::out_of_range("Valuation::value: item out of range");
  switch (kind_) {
    case ValuationKind::kAdditive: {
      Rational sum;
      for (int j = 0; j < num_items_; ++j) {
        if (set_contains(bundle, j)) sum += item_values_[j];
      }
      return sum;
    }
    case ValuationKind::kUnitDemand: {
      Rational best;
      for (int j = 0; j < num_items_; ++j) {
        if (set_contains(bundle, j) && item_values_[j] > best) best = item_values_[j];
      }
      return best;
    }
    case ValuationKind::kCoverage: {
      std::uint32_t covered = 0;
      for (int j = 0; j < num_items_; ++j) {
        if (set_contains(bundle, j)) covered |= covers_[j];
      }
      Rational sum;
      for (std::size_t e = 0; e < weights_.size(); ++e) {
        if ((covered >> e) & 1u) sum += weights_[e];
      }
      return sum;
    }
    case ValuationKind::kExplicit:
      return table_[bundle];
  }
  throw std::logic_error("unreachable");
}

const Rational& Valuation::item_value(int item) const {
  return item_values().at(item);
}

const std::vector<Rational>& Valuation::item_values() const {
  if (kind_ != ValuationKind::kAdditive && kind_ != ValuationKind::kUnitDemand) {
    throw std::invalid_argument("item_values: per-item values only for additive/unit-demand");
  }
  return item_values_;
}

int Allocation::sold_count() const {
  int k = 0;
  for (auto w : winner_) k += (w != kUnsold);
  return k;
}

void Allocation::assign(int item, int buyer) {
  if (item < 0 || item >= items()) throw std::out_of_range("Allocation::assign: item");
  winner_[item] = static_cast<std::int16_t>(buyer);
}

Allocation Allocation::assigned(int item, int buyer) const {
  Allocation copy = *this;
  copy.assign(item, buyer);
  return copy;
}

ItemSet Allocation::bundle(int buyer) const {
  ItemSet s = 0;
  for (int j = 0; j < items(); ++j) {
    if (winner_[j] == buyer) s = set_with(s, j);
  }
  return s;
}

std::vector<int> Allocation::bundle_items(int buyer) const {
  std::vector<int> out;
  for (int j = 0; j < items(); ++j) {
    if (winner_[j] == buyer) out.push_back(j);
  }
  return out;
}

ItemSet Allocation::sold_set() const {
  ItemSet s = 0;
  for (int j = 0; j < items(); ++j) {
    if (winner_[j] != kUnsold) s = set_with(s, j);
  }
  return s;
}

std::string Allocation::str() const {
  std::string out = "[";
  for (int j = 0; j < items(); ++j) {
    if (j) out += ",";
    out += winner_[j] == kUnsold ? "-" : std::to_string(winner_[j]);
  }
  return out + "]";
}

Market::Market(std::vector<Valuation> buyers, int num_items, std::string label)
    : vals_(std::move(buyers)), num_items_(num_items), label_(std::move(label)) {
  if (num_items_ < 1 || num_items_ > 63) {
    throw std::invalid_argument("Market: need 1..63 items");
  }
  if (vals_.empty()) throw std::invalid_argument("Market: need at least one buyer");
  for (const auto& v : vals_) {
    if (v.num_items() != num_items_) {
      throw std::invalid_argument("Market: valuation item count mismatch");
    }
  }
}

bool Market::all_kind(ValuationKind kind) const {
  for (const auto& v : vals_) {
    if (v.kind() != kind) return false;
  }
  return true;
}

Rational Market::value(int buyer, ItemSet bundle) const {
  return vals_.at(buyer).value(bundle);
}

Rational Market::welfare(const Allocation& alloc) const {
  Rational sum;
  for (int i = 0; i < buyers(); ++i) sum += value(i, alloc.bundle(i));
  return sum;
}

Rational residual_value(const Market& market, int buyer, int item,
                        const Allocation& sold) {
  const Valuation& v = market.valuation(buyer);
  if (v.kind() != ValuationKind::kUnitDemand) {
    throw std::invalid_argument("residual_value: buyer is not unit-demand");
  }
  if (sold.sold(item)) throw std::invalid_argument("residual_value: item already sold");
  Rational held;  // best item the buyer already won
  for (int j = 0; j < market.items(); ++j) {
    if (sold.sold(j) && sold.winner(j) == buyer && v.item_value(j) > held) {
      held = v.item_value(j);
    }
  }
  Rational diff = v.item_value(item) - held;
  return diff.sign() > 0 ? diff : Rational(0);
}

Rational marginal_value(const Market& market, int buyer, int item,
                        const Allocation& state) {
  if (state.sold(item)) throw std::invalid_argument("marginal_value: item already sold");
  const ItemSet held = state.bundle(buyer);
  return market.value(buyer, set_with(held, item)) - market.value(buyer, held);
}

}  // namespace seqauction
