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
#include <vector>

#include "seqauction/market.hpp"
#include "seqauction/rational.hpp"

namespace seqauction {

// Market families used throughout the test and reproduction suites. The fixed
// families are exact constructions; the random families draw "generic"
// instances by rejection sampling so that no two relevant value combinations
// coincide (which keeps optimal matchings, supporters and stage winners
// unambiguous).

/// Two additive buyers over m identical items: buyer A values every item at m,
/// buyer B at 1. Optimal welfare is m^2.
Market poa_additive_market(int m);

/// Like poa_additive, but buyer B values the last item at eps instead of 1.
Market low_revenue_market(int m, const Rational& eps);

/// m items, m+1 unit-demand buyers forming an interest chain:
/// buyer 0 wants item 0 at 1, buyer i (1<=i<m) wants items i-1 and i at
/// 1 + i*eps, buyer m wants item m-1 at 1 + m*eps.
Market order_matters_market(int m, const Rational& eps);

/// Default epsilon 1/m^3.
Market order_matters_market(int m);

/// Two items; buyer 0 ("OR") is unit-demand with value 4 per item, buyer 1
/// ("SUM") is additive with value 5 per item.
Market demand_reduction_market();

/// Buyers with non-singleton valuations: single-minded over random sets of
/// size >= 2, so every singleton is worth 0.
Market nonsingleton_market(int n, int m, std::uint64_t seed);

/// Value lattice for the random families: numerators drawn uniformly from
/// [1, max_numerator], fixed denominator.
///
/// With `dyadic_jitter` set, the k-th drawn value gets 2^-(20+k) added and the
/// base numerators are kept pairwise distinct. Any signed combination of such
/// values is nonzero (the jitter parts are distinct powers of two and too
/// small to cancel a nonzero base part), so instances are generic at every
/// order while values stay small — which is what the grid oracle needs.
struct ValueLattice {
  long long max_numerator = 1'000'000;
  long long denominator = 1'000;
  bool dyadic_jitter = false;
};

Market random_unit_demand_market(int n, int m, std::uint64_t seed,
                                 const ValueLattice& lattice = {});
Market random_additive_market(int n, int m, std::uint64_t seed,
                              const ValueLattice& lattice = {});

struct CoverageParams {
  int universe = 4;                 // ground-set elements per buyer
  long long weight_max_num = 8;     // weights in [1, max]/den
  long long weight_den = 4;
};

Market random_coverage_market(int n, int m, std::uint64_t seed,
                              const CoverageParams& params = {});

/// True if no small signed combination of the values vanishes. For up to 12
/// values, combinations of up to 6 terms are checked (enough to separate all
/// 3x3 matching welfares); beyond that, pairwise sums and differences.
bool values_generic(const std::vector<Rational>& values);

/// Deterministic generator state shared by the random families.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next();
  /// Uniform in [lo, hi].
  long long uniform(long long lo, long long hi);

 private:
  std::uint64_t state_;
};

}  // namespace seqauction
