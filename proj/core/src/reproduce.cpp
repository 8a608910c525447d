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

#include "seqauction/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "seqauction/equilibrium.hpp"
#include "seqauction/folks.hpp"
#include "seqauction/game.hpp"
#include "seqauction/oracle.hpp"
#include "seqauction/scenarios.hpp"
#include "seqauction/strategies.hpp"
#include "seqauction/walrasian.hpp"

namespace seqauction {

namespace {

// A tiny check harness: accumulate the first failure with expected/observed.
struct Checker {
  bool pass = true;
  std::string details;

  void expect(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      details = what;
    }
  }
  template <typename T>
  void expect_eq(const T& observed, const T& expected, const std::string& what) {
    if (!(observed == expected) && pass) {
      pass = false;
      std::ostringstream os;
      os << what << ": expected " << expected.str() << ", observed " << observed.str();
      details = os.str();
    }
  }
};

// Coarse lattice for oracle-facing random draws: base values 1/4 apart (two
// grid steps at delta = 1/8) plus dyadic jitter, so instances are generic at
// every order while bids stay enumerable.
ValueLattice oracle_lattice() { return ValueLattice{32, 4, true}; }

// Oracle prices live on the bid grid while exact equilibrium prices carry
// jitter crumbs, so agreement is judged against the grid-snapped reference:
// the achievable window is [floor(p*) - delta, floor(p*) + delta].
bool price_matches(const Rational& oracle_price, const Rational& reference,
                   const Rational& delta) {
  const Rational snapped = Rational(reference.floor_div(delta)) * delta;
  return abs(oracle_price - snapped) <= delta;
}

CoverageParams oracle_coverage() { return CoverageParams{3, 8, 4}; }

// ---- C1 -------------------------------------------------------------------

CriterionResult c1_poa_lower_bound() {
  Checker c;
  for (int m = 2; m <= 10; ++m) {
    StrategyTree tree = bad_spe_additive(m);
    Outcome out = play(*tree.market, tree.policy, tree.profile);
    c.expect_eq(out.welfare, Rational(2 * m - 1), "welfare at m=" + std::to_string(m));
    PoaResult r = poa(*tree.market, out);
    c.expect_eq(r.optimal, Rational(m * m), "optimum at m=" + std::to_string(m));
    c.expect_eq(r.ratio, Rational(m * m) / Rational(2 * m - 1),
                "PoA at m=" + std::to_string(m));
    auto spe = verify_spe(*tree.market, tree.policy, tree.profile, Rational(1, 16));
    c.expect(spe.is_spe(), "bad additive profile must verify at m=" + std::to_string(m));
  }
  return {"C1", "additive PoA lower bound m^2/(2m-1)", {"strategies", "game"},
          c.pass, c.pass ? "m=2..10 exact" : c.details, 0.0};
}

// ---- C2 -------------------------------------------------------------------

CriterionResult c2_subadditive_bound() {
  Checker c;
  Rng pick(20250202);
  const Rational delta(1, 8);
  for (int k = 0; k < 25; ++k) {
    const int n = static_cast<int>(pick.uniform(2, 3));
    const int m = static_cast<int>(pick.uniform(2, 3));
    Market mkt = random_coverage_market(n, m, 51000 + k, oracle_coverage());
    Rational top_single;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const Rational v = mkt.value(i, ItemSet{1} << j);
        if (v > top_single) top_single = v;
      }
    }
    SellerPolicy policy{ascending_order(), max_marginal_tiebreak(mkt)};
    OracleOptions opt;
    opt.delta = delta;
    auto outcomes = brute_force_spe(mkt, policy, opt);
    c.expect(!outcomes.empty(), "no equilibria found on market " + std::to_string(k));
    const Rational bound = top_single / Rational(2) - delta;
    for (const auto& o : outcomes) {
      if (mkt.welfare(o.allocation) < bound) {
        c.expect(false, "welfare below M/2 - delta on market " + std::to_string(k));
        break;
      }
    }
    if (!c.pass) break;
  }
  return {"C2", "subadditive welfare lower bound M/2 - delta",
          {"equilibrium", "market"}, c.pass,
          c.pass ? "25 coverage markets, every grid equilibrium" : c.details, 0.0};
}

// ---- C3 -------------------------------------------------------------------

CriterionResult c3_low_revenue() {
  Checker c;
  const Rational eps(1, 100);
  for (int m = 2; m <= 8; ++m) {
    StrategyTree tree = low_revenue_spe(m, eps);
    Outcome out = play(*tree.market, tree.policy, tree.profile);
    c.expect_eq(out.revenue, eps * Rational(m), "revenue at m=" + std::to_string(m));
    c.expect_eq(additive_walrasian(*tree.market).revenue(), Rational(m - 1) + eps,
                "walrasian revenue at m=" + std::to_string(m));
    auto spe = verify_spe(*tree.market, tree.policy, tree.profile, Rational(1, 16));
    c.expect(spe.is_spe(), "low-revenue profile must verify at m=" + std::to_string(m));
  }
  return {"C3", "revenue eps*m against walrasian m-1+eps",
          {"strategies", "walrasian"}, c.pass,
          c.pass ? "m=2..8 exact at eps=1/100" : c.details, 0.0};
}

// ---- C4 -------------------------------------------------------------------

CriterionResult c4_additive_uniqueness() {
  Checker c;
  Rng pick(20250404);
  const Rational delta(1, 8);
  for (int k = 0; k < 25 && c.pass; ++k) {
    const int n = static_cast<int>(pick.uniform(2, 3));
    const int m = static_cast<int>(pick.uniform(2, 3));
    Market mkt = random_additive_market(n, m, 54000 + k, oracle_lattice());
    SellerPolicy policy{ascending_order(), max_tiebreak_rule(mkt)};
    OracleOptions opt;
    opt.delta = delta;
    opt.oc_filter = true;
    auto outcomes = brute_force_spe(mkt, policy, opt);
    c.expect(!outcomes.empty(), "no conservative equilibrium on market " + std::to_string(k));
    if (!c.pass) break;
    c.expect(single_outcome_class(outcomes, delta),
             "multiple outcome classes on market " + std::to_string(k));
    auto eq = additive_outcome(mkt);
    for (const auto& o : outcomes) {
      c.expect(o.allocation == eq.outcome.allocation,
               "allocation differs on market " + std::to_string(k));
      for (int j = 0; j < m; ++j) {
        c.expect(price_matches(o.prices[j], eq.outcome.prices[j], delta),
                 "price off by more than delta on market " + std::to_string(k));
      }
    }
  }
  return {"C4", "additive markets: second-price outcome is the unique class",
          {"equilibrium", "strategies"}, c.pass,
          c.pass ? "25 generic additive markets at delta=1/8" : c.details, 0.0};
}

// ---- C5 -------------------------------------------------------------------

CriterionResult c5_minimal_walrasian() {
  Checker c;
  Rng pick(20250505);
  for (int k = 0; k < 100 && c.pass; ++k) {
    const int n = static_cast<int>(pick.uniform(2, 6));
    const int m = static_cast<int>(pick.uniform(2, 6));
    Market mkt = random_unit_demand_market(n, m, 55000 + k);
    auto values = unit_demand_matrix(mkt);
    auto we = minimal_walrasian(values);
    c.expect(is_walrasian(values, we.allocation, we.prices).ok,
             "not walrasian on market " + std::to_string(k));
    try {
      auto supp = supporters(values, we);
      auto order = support_order(we, supp);
      c.expect(static_cast<int>(order.size()) == m,
               "support order incomplete on market " + std::to_string(k));
    } catch (const Error& e) {
      c.expect(false, std::string("support machinery failed: ") + e.what());
    }
  }
  // Lattice instances: exact coordinatewise minimum by sweep.
  Rng lat(20250515);
  for (int k = 0; k < 20 && c.pass; ++k) {
    const int n = static_cast<int>(lat.uniform(1, 3));
    const int m = static_cast<int>(lat.uniform(1, 3));
    ValueMatrix v(n, std::vector<Rational>(m));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) v[i][j] = Rational(lat.uniform(0, 5));
    }
    std::vector<Rational> floor(m, Rational(6));
    std::vector<Rational> prices(m);
    std::vector<Allocation> allocs;
    {
      Allocation cur(m);
      std::function<void(int)> walk = [&](int item) {
        if (item == m) {
          allocs.push_back(cur);
          return;
        }
        for (int b = 0; b < n; ++b) {
          cur.assign(item, b);
          walk(item + 1);
        }
      };
      walk(0);
    }
    std::function<void(int)> sweep = [&](int item) {
      if (item == m) {
        for (const auto& a : allocs) {
          if (is_walrasian(v, a, prices).ok) {
            for (int j = 0; j < m; ++j) {
              if (prices[j] < floor[j]) floor[j] = prices[j];
            }
            break;
          }
        }
        return;
      }
      for (long long q = 0; q <= 5; ++q) {
        prices[item] = Rational(q);
        sweep(item + 1);
      }
    };
    sweep(0);
    auto we = minimal_walrasian(v);
    for (int j = 0; j < m; ++j) {
      c.expect_eq(we.prices[j], floor[j], "lattice minimum mismatch, instance " +
                                              std::to_string(k));
    }
  }
  return {"C5", "minimal walrasian prices: valid, supported, ordered, minimal",
          {"walrasian"}, c.pass,
          c.pass ? "100 random + 20 lattice-swept markets" : c.details, 0.0};
}

// ---- C6 -------------------------------------------------------------------

CriterionResult c6_unit_wlrs_spe() {
  Checker c;
  Rng pick(20250606);
  for (int k = 0; k < 100 && c.pass; ++k) {
    const int n = static_cast<int>(pick.uniform(2, 5));
    const int m = static_cast<int>(pick.uniform(2, 5));
    Market mkt = random_unit_demand_market(n, m, 56000 + k);
    auto unit = unit_wlrs_eq(mkt);
    auto spe = verify_spe(mkt, unit.tree.policy, unit.tree.profile, Rational(1, 16));
    c.expect(spe.is_spe(), "profitable deviation on market " + std::to_string(k));
    Outcome out = play(mkt, unit.tree.policy, unit.tree.profile);
    auto root = minimal_walrasian(mkt);
    for (int j = 0; j < m; ++j) {
      c.expect_eq(out.prices[j], root.prices[j],
                  "on-path price differs from walrasian, market " + std::to_string(k));
    }
    c.expect(is_optimistic_conservative(mkt, unit.tree.policy, unit.tree.profile).ok,
             "profile not conservative on market " + std::to_string(k));
  }
  return {"C6", "unit-demand walrasian strategy is a conservative SPE",
          {"strategies", "equilibrium"}, c.pass,
          c.pass ? "100 random unit-demand markets at delta=1/16" : c.details, 0.0};
}

// ---- C7 -------------------------------------------------------------------

CriterionResult c7_unit_uniqueness() {
  Checker c;
  const Rational delta(1, 8);
  for (int k = 0; k < 25 && c.pass; ++k) {
    Market mkt = random_unit_demand_market(3, 3, 57000 + k, oracle_lattice());
    auto unit = unit_wlrs_eq(mkt);
    OracleOptions opt;
    opt.delta = delta;
    opt.oc_filter = true;
    auto outcomes = brute_force_spe(mkt, unit.tree.policy, opt);
    c.expect(!outcomes.empty(), "no conservative equilibrium on market " + std::to_string(k));
    if (!c.pass) break;
    c.expect(single_outcome_class(outcomes, delta),
             "multiple classes on market " + std::to_string(k));
    Outcome path = play(mkt, unit.tree.policy, unit.tree.profile);
    for (const auto& o : outcomes) {
      c.expect(o.allocation == path.allocation,
               "allocation differs on market " + std::to_string(k));
      for (int j = 0; j < 3; ++j) {
        c.expect(price_matches(o.prices[j], path.prices[j], delta),
                 "price off by more than delta on market " + std::to_string(k));
      }
    }
  }
  return {"C7", "unit-demand: the conservative class is the walrasian outcome",
          {"equilibrium", "strategies"}, c.pass,
          c.pass ? "25 generic 3x3 markets at delta=1/8" : c.details, 0.0};
}

// ---- C8 -------------------------------------------------------------------

CriterionResult c8_order_matters() {
  Checker c;
  // Grid-compatible epsilon: interest-chain gaps must exceed the bid step,
  // else near-indifferent grid equilibria leak in.
  const Rational eps(1, 2);
  const Rational delta(1, 8);
  for (int m = 2; m <= 4 && c.pass; ++m) {
    Market mkt = order_matters_market(m, eps);
    auto pair = order_matters_pair(m, eps);
    auto cert = folks_check(mkt, pair.bad_allocation, pair.bad_prices, pair.bad_order);
    c.expect(cert.valid, "bad-order certificate rejected at m=" + std::to_string(m));
    Rational cert_revenue;
    for (const auto& p : pair.bad_prices) cert_revenue += p;
    c.expect_eq(cert_revenue, Rational(1), "bad-order revenue at m=" + std::to_string(m));
    c.expect_eq(minimal_walrasian(mkt).revenue(), Rational(m),
                "walrasian revenue at m=" + std::to_string(m));

    SellerPolicy policy{fixed_order(pair.good_order), lowest_index_tiebreak()};
    OracleOptions opt;
    opt.delta = delta;
    auto outcomes = brute_force_spe(mkt, policy, opt);
    c.expect(!outcomes.empty(), "no equilibria on good order at m=" + std::to_string(m));
    const Rational bound = Rational(m) - Rational(m) * delta;
    for (const auto& o : outcomes) {
      c.expect(outcome_revenue(o) >= bound,
               "good-order revenue below m - m*delta at m=" + std::to_string(m));
      for (int j = 0; j + 1 < m; ++j) {
        c.expect(o.prices[j] <= o.prices[j + 1] + delta,
                 "prices not monotone within delta at m=" + std::to_string(m));
      }
    }
  }
  return {"C8", "selling order swings revenue from 1 to m",
          {"folks", "walrasian", "equilibrium"}, c.pass,
          c.pass ? "m=2..4: certificate, walrasian revenue, good-order sweep" : c.details,
          0.0};
}

// ---- C9 -------------------------------------------------------------------

CriterionResult c9_demand_reduction() {
  Checker c;
  Market mkt = demand_reduction_market();
  const Rational delta(1, 4);
  SellerPolicy policy{ascending_order(), max_marginal_tiebreak(mkt)};
  OracleOptions opt;
  opt.delta = delta;
  opt.oc_filter = true;
  auto outcomes = brute_force_spe(mkt, policy, opt);
  c.expect(!outcomes.empty(), "no conservative equilibrium");
  c.expect(single_outcome_class(outcomes, delta), "multiple outcome classes");
  for (const auto& o : outcomes) {
    c.expect(o.allocation.winner(0) == 0, "first item not with the unit-demand buyer");
    c.expect(o.allocation.winner(1) == 1, "second item not with the additive buyer");
    c.expect(abs(o.prices[0] - Rational(1)) <= delta, "first item price off 1 +- delta");
    c.expect_eq(o.prices[1], Rational(0), "second item price");
  }
  // Full-information benchmark: the additive buyer takes both items at 4
  // each; revenue 8. Any price below 4 on either item breaks the unit-demand
  // buyer's best response.
  Allocation bench(2);
  bench.assign(0, 1);
  bench.assign(1, 1);
  std::vector<Rational> fours{Rational(4), Rational(4)};
  c.expect(is_walrasian(mkt, bench, fours).ok, "benchmark allocation not walrasian");
  c.expect(!is_walrasian(mkt, bench, {Rational(15, 4), Rational(4)}).ok,
           "benchmark prices not minimal (item 0)");
  c.expect(!is_walrasian(mkt, bench, {Rational(4), Rational(15, 4)}).ok,
           "benchmark prices not minimal (item 1)");
  Rational bench_revenue = fours[0] + fours[1];
  c.expect_eq(bench_revenue, Rational(8), "benchmark revenue");
  for (const auto& o : outcomes) {
    c.expect(outcome_revenue(o) <= Rational(3, 2), "equilibrium revenue near benchmark");
  }
  return {"C9", "demand reduction: revenue ~1 against benchmark 8",
          {"equilibrium", "walrasian"}, c.pass,
          c.pass ? "conservative class {item0->OR at ~1, item1->SUM at 0}" : c.details,
          0.0};
}

// ---- C10 ------------------------------------------------------------------

CriterionResult c10_greedy_submodular() {
  Checker c;
  Rng pick(20251010);
  for (int k = 0; k < 50 && c.pass; ++k) {
    const int n = static_cast<int>(pick.uniform(2, 4));
    const int m = static_cast<int>(pick.uniform(2, 5));
    Market mkt = random_coverage_market(n, m, 60000 + k, CoverageParams{4, 8, 4});
    auto greedy = greedy_submodular(mkt);
    Outcome out = play(mkt, greedy.tree.policy, greedy.tree.profile);
    const Rational opt = optimal_welfare(mkt);
    c.expect(out.revenue * Rational(2) >= opt,
             "revenue below OPT/2 on market " + std::to_string(k));
    for (const auto& u : out.utilities) {
      c.expect(u.is_zero(), "nonzero buyer utility on market " + std::to_string(k));
    }
    auto spe = verify_spe(mkt, greedy.tree.policy, greedy.tree.profile, Rational(1, 16));
    c.expect(spe.is_spe(), "greedy profile must verify on market " + std::to_string(k));
  }
  return {"C10", "greedy order extracts at least half the optimum as revenue",
          {"strategies", "equilibrium"}, c.pass,
          c.pass ? "50 coverage markets, exact OPT by enumeration" : c.details, 0.0};
}

// ---- C11 ------------------------------------------------------------------

CriterionResult c11_nonsingleton() {
  Checker c;
  Rng pick(20251111);
  for (int k = 0; k < 10 && c.pass; ++k) {
    const int n = static_cast<int>(pick.uniform(2, 3));
    const int m = static_cast<int>(pick.uniform(2, 4));
    Market mkt = nonsingleton_market(n, m, 61000 + k);
    Allocation omega(m);
    for (int j = 0; j < m; ++j) omega.assign(j, 0);
    std::vector<Rational> zeros(m, Rational(0));
    auto found = folks_search(mkt, omega, zeros);
    c.expect(found.has_value(),
             "all-to-one certificate rejected on market " + std::to_string(k));
    StrategyTree tree = nonsingleton_spe(mkt);
    Outcome out = play(mkt, tree.policy, tree.profile);
    c.expect_eq(out.revenue, Rational(0), "revenue on market " + std::to_string(k));
    auto spe = verify_spe(mkt, tree.policy, tree.profile, Rational(1, 16));
    c.expect(spe.is_spe(), "nonsingleton profile must verify on market " + std::to_string(k));
  }
  return {"C11", "non-singleton buyers: everything to one buyer for free",
          {"strategies", "folks"}, c.pass,
          c.pass ? "10 random single-minded markets" : c.details, 0.0};
}

struct TimeLimit {
  int index;
  double seconds;
};

// Stated runtime caps are part of the criteria.
constexpr TimeLimit kLimits[] = {{1, 5.0}, {2, 120.0}, {6, 300.0}};

}  // namespace

struct Criterion {
  CriterionResult (*run)();
  std::vector<std::string> modules;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> table = {
      {c1_poa_lower_bound, {"strategies", "game"}},
      {c2_subadditive_bound, {"equilibrium", "market"}},
      {c3_low_revenue, {"strategies", "walrasian"}},
      {c4_additive_uniqueness, {"equilibrium", "strategies"}},
      {c5_minimal_walrasian, {"walrasian"}},
      {c6_unit_wlrs_spe, {"strategies", "equilibrium"}},
      {c7_unit_uniqueness, {"equilibrium", "strategies"}},
      {c8_order_matters, {"folks", "walrasian", "equilibrium"}},
      {c9_demand_reduction, {"equilibrium", "walrasian"}},
      {c10_greedy_submodular, {"strategies", "equilibrium"}},
      {c11_nonsingleton, {"strategies", "folks"}},
  };
  return table;
}

int criteria_count() { return static_cast<int>(criteria().size()); }

CriterionResult run_criterion(int index) {
  if (index < 1 || index > criteria_count()) {
    throw std::invalid_argument("run_criterion: index out of range");
  }
  const auto& entry = criteria()[index - 1];
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result;
  try {
    result = entry.run();
  } catch (const std::exception& e) {
    result.id = "C" + std::to_string(index);
    result.pass = false;
    result.details = std::string("exception: ") + e.what();
  }
  result.modules = entry.modules;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& limit : kLimits) {
    if (limit.index == index && result.seconds > limit.seconds && result.pass) {
      result.pass = false;
      result.details = "runtime " + std::to_string(result.seconds) + "s exceeds " +
                       std::to_string(limit.seconds) + "s";
    }
  }
  return result;
}

std::vector<CriterionResult> run_all_criteria(const std::vector<std::string>& only) {
  std::vector<CriterionResult> results;
  for (int i = 1; i <= criteria_count(); ++i) {
    if (!only.empty()) {
      bool wanted = false;
      for (const auto& tag : criteria()[i - 1].modules) {
        if (std::find(only.begin(), only.end(), tag) != only.end()) wanted = true;
      }
      if (!wanted) continue;
    }
    results.push_back(run_criterion(i));
  }
  return results;
}

std::string criteria_json(const std::vector<CriterionResult>& results) {
  nlohmann::json out;
  out["suite"] = "seqauction reproduce";
  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json one;
    one["id"] = r.id;
    one["name"] = r.name;
    one["modules"] = r.modules;
    one["pass"] = r.pass;
    one["details"] = r.details;
    one["seconds"] = r.seconds;
    arr.push_back(one);
    all = all && r.pass;
  }
  out["criteria"] = arr;
  out["all_pass"] = all;
  return out.dump(2);
}

std::string criteria_csv(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  os << "id,name,pass,seconds\n";
  for (const auto& r : results) {
    os << r.id << ",\"" << r.name << "\"," << (r.pass ? "1" : "0") << "," << r.seconds
       << "\n";
  }
  return os.str();
}

}  // namespace seqauction
