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

#include "seqauction/scenarios.hpp"

#include "seqauction/errors.hpp"

#include <bit>
#include <set>
#include <stdexcept>
#include <string>

namespace seqauction {

std::uint64_t Rng::next() {
  // splitmix64; stable across platforms, unlike std distributions.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

long long Rng::uniform(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(next() % span);
}

Market poa_additive_market(int m) {
  if (m < 2) throw std::invalid_argument("poa_additive: need m >= 2");
  std::vector<Rational> a(m, Rational(m)), b(m, Rational(1));
  return Market({Valuation::Additive(a), Valuation::Additive(b)}, m, "poa_additive");
}

Market low_revenue_market(int m, const Rational& eps) {
  if (m < 2) throw std::invalid_argument("low_revenue: need m >= 2");
  if (eps.sign() <= 0) throw std::invalid_argument("low_revenue: need eps > 0");
  std::vector<Rational> a(m, Rational(m)), b(m, Rational(1));
  b[m - 1] = eps;
  return Market({Valuation::Additive(a), Valuation::Additive(b)}, m, "low_revenue");
}

Market order_matters_market(int m, const Rational& eps) {
  if (m < 2) throw std::invalid_argument("order_matters: need m >= 2");
  if (eps.sign() <= 0) throw std::invalid_argument("order_matters: need eps > 0");
  std::vector<Valuation> buyers;
  buyers.reserve(m + 1);
  {
    std::vector<Rational> v(m, Rational(0));
    v[0] = Rational(1);
    buyers.push_back(Valuation::UnitDemand(v));  // buyer 0: item 0 only
  }
  for (int i = 1; i <= m - 1; ++i) {
    std::vector<Rational> v(m, Rational(0));
    const Rational val = Rational(1) + Rational(i) * eps;
    v[i - 1] = val;
    v[i] = val;
    buyers.push_back(Valuation::UnitDemand(v));
  }
  {
    std::vector<Rational> v(m, Rational(0));
    v[m - 1] = Rational(1) + Rational(m) * eps;
    buyers.push_back(Valuation::UnitDemand(v));
  }
  return Market(std::move(buyers), m, "order_matters");
}

Market order_matters_market(int m) {
  return order_matters_market(m, Rational(1, static_cast<long long>(m) * m * m));
}

Market demand_reduction_market() {
  std::vector<Rational> orv{Rational(4), Rational(4)};
  std::vector<Rational> sumv{Rational(5), Rational(5)};
  return Market({Valuation::UnitDemand(orv), Valuation::Additive(sumv)}, 2,
                "demand_reduction");
}

Market nonsingleton_market(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 2 || m > 16) throw std::invalid_argument("nonsingleton: need n>=1, 2<=m<=16");
  Rng rng(seed ^ 0x5150ull);
  std::vector<Valuation> buyers;
  for (int i = 0; i < n; ++i) {
    std::uint32_t want = 0;
    do {
      want = static_cast<std::uint32_t>(rng.uniform(1, (1ll << m) - 1));
    } while (std::popcount(want) < 2);
    const Rational weight(rng.uniform(1, 16), 4);
    std::vector<Rational> table(std::size_t{1} << m, Rational(0));
    for (std::uint32_t s = 0; s < table.size(); ++s) {
      if ((s & want) == want) table[s] = weight;
    }
    buyers.push_back(Valuation::Explicit(m, std::move(table)));
  }
  return Market(std::move(buyers), m, "nonsingleton");
}

namespace {

// All signed combinations of up to `max_terms` of the values must be nonzero.
bool small_combos_nonzero(const std::vector<Rational>& values, int max_terms) {
  const int n = static_cast<int>(values.size());
  bool ok = true;
  // Depth-first over coefficients in {-1, 0, +1}.
  std::vector<int> coeff(n, 0);
  auto rec = [&](auto&& self, int idx, int used, const Rational& sum) -> void {
    if (!ok) return;
    if (idx == n) {
      if (used > 0 && sum.is_zero()) ok = false;
      return;
    }
    self(self, idx + 1, used, sum);
    if (used < max_terms) {
      self(self, idx + 1, used + 1, sum + values[idx]);
      self(self, idx + 1, used + 1, sum - values[idx]);
    }
  };
  rec(rec, 0, 0, Rational(0));
  return ok;
}

bool pairwise_generic(const std::vector<Rational>& values) {
  std::set<std::string> seen;
  for (const auto& v : values) {
    if (!seen.insert(v.str()).second) return false;
  }
  std::set<std::string> sums, diffs;
  const int n = static_cast<int>(values.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!sums.insert((values[a] + values[b]).str()).second) return false;
      if (!diffs.insert(abs(values[a] - values[b]).str()).second) return false;
    }
  }
  return true;
}

std::vector<Rational> draw_values(Rng& rng, int count, const ValueLattice& lattice) {
  std::vector<Rational> out;
  out.reserve(count);
  if (!lattice.dyadic_jitter) {
    for (int k = 0; k < count; ++k) {
      out.emplace_back(rng.uniform(1, lattice.max_numerator), lattice.denominator);
    }
    return out;
  }
  if (count > 40) throw std::invalid_argument("dyadic_jitter: too many values");
  if (lattice.max_numerator < count) {
    throw std::invalid_argument("dyadic_jitter: lattice too small for distinct bases");
  }
  std::set<long long> used;
  for (int k = 0; k < count; ++k) {
    long long numer;
    do {
      numer = rng.uniform(1, lattice.max_numerator);
    } while (!used.insert(numer).second);
    out.push_back(Rational(numer, lattice.denominator) +
                  Rational(1, 1ll << (20 + k)));
  }
  return out;
}

bool acceptable(const std::vector<Rational>& values, const ValueLattice& lattice) {
  // Jittered draws are generic by construction.
  return lattice.dyadic_jitter || values_generic(values);
}

}  // namespace

bool values_generic(const std::vector<Rational>& values) {
  if (values.size() <= 12) return small_combos_nonzero(values, 6);
  return pairwise_generic(values);
}

Market random_unit_demand_market(int n, int m, std::uint64_t seed,
                                 const ValueLattice& lattice) {
  if (n < 1 || m < 1) throw std::invalid_argument("random_unit_demand: need n,m >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto values = draw_values(rng, n * m, lattice);
    if (!acceptable(values, lattice)) continue;
    std::vector<Valuation> buyers;
    for (int i = 0; i < n; ++i) {
      buyers.push_back(Valuation::UnitDemand(
          std::vector<Rational>(values.begin() + i * m, values.begin() + (i + 1) * m)));
    }
    return Market(std::move(buyers), m, "random_unit_demand");
  }
  throw Error("random_unit_demand: rejection sampling failed; lattice too coarse");
}

Market random_additive_market(int n, int m, std::uint64_t seed,
                              const ValueLattice& lattice) {
  if (n < 1 || m < 1) throw std::invalid_argument("random_additive: need n,m >= 1");
  Rng rng(seed ^ 0xadd111ull);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto values = draw_values(rng, n * m, lattice);
    if (!acceptable(values, lattice)) continue;
    std::vector<Valuation> buyers;
    for (int i = 0; i < n; ++i) {
      buyers.push_back(Valuation::Additive(
          std::vector<Rational>(values.begin() + i * m, values.begin() + (i + 1) * m)));
    }
    return Market(std::move(buyers), m, "random_additive");
  }
  throw Error("random_additive: rejection sampling failed; lattice too coarse");
}

Market random_coverage_market(int n, int m, std::uint64_t seed,
                              const CoverageParams& params) {
  if (n < 1 || m < 1) throw std::invalid_argument("random_coverage: need n,m >= 1");
  if (params.universe < 1 || params.universe > 16) {
    throw std::invalid_argument("random_coverage: universe must be 1..16");
  }
  Rng rng(seed ^ 0xc0444ull);
  // Dyadic jitter keeps all weights (and their combinations) distinct without
  // rejection; the bound-style properties these markets feed only need ties
  // avoided, not a particular lattice.
  if (n * params.universe > 40) {
    throw std::invalid_argument("random_coverage: too many weights for jitter");
  }
  std::vector<Valuation> buyers;
  int jitter_idx = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> weights;
    for (int e = 0; e < params.universe; ++e) {
      weights.push_back(Rational(rng.uniform(1, params.weight_max_num), params.weight_den) +
                        Rational(1, 1ll << (20 + jitter_idx++)));
    }
    std::vector<std::uint32_t> covers;
    for (int j = 0; j < m; ++j) {
      covers.push_back(static_cast<std::uint32_t>(
          rng.uniform(1, (1ll << params.universe) - 1)));
    }
    buyers.push_back(Valuation::Coverage(m, std::move(weights), std::move(covers)));
  }
  return Market(std::move(buyers), m, "random_coverage");
}

}  // namespace seqauction
