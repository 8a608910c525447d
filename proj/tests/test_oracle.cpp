#include "doctest.h"
#include "seqauction/game.hpp"
#include "seqauction/oracle.hpp"
#include "seqauction/scenarios.hpp"
#include "seqauction/strategies.hpp"
#include "seqauction/walrasian.hpp"

#include <algorithm>

using namespace seqauction;

namespace {

SellerPolicy scenario_policy(const Market& mkt) {
  return SellerPolicy{ascending_order(), max_marginal_tiebreak(mkt)};
}

bool contains_price(const std::vector<OracleOutcome>& outcomes, int item,
                    const Rational& price) {
  return std::any_of(outcomes.begin(), outcomes.end(), [&](const OracleOutcome& o) {
    return o.prices[item] == price;
  });
}

}  // namespace

TEST_CASE("single item duel at integer grid") {
  Market mkt({Valuation::UnitDemand({Rational(10)}), Valuation::UnitDemand({Rational(5)})}, 1);
  SellerPolicy policy = scenario_policy(mkt);
  OracleOptions opt;
  opt.delta = Rational(1);
  for (bool oc : {false, true}) {
    opt.oc_filter = oc;
    auto outcomes = brute_force_spe(mkt, policy, opt);
    REQUIRE(!outcomes.empty());
    for (const auto& o : outcomes) {
      CHECK(o.allocation.winner(0) == 0);
      CHECK(o.prices[0] >= Rational(4));
      // Unfiltered, the loser may hold the price anywhere up to the winner's
      // value; conservative bidding pins it at the second value.
      CHECK(o.prices[0] <= (oc ? Rational(5) : Rational(10)));
    }
    if (oc) CHECK(single_outcome_class(outcomes, opt.delta));
    CHECK(contains_price(outcomes, 0, Rational(5)));
  }
}

TEST_CASE("unfiltered duel admits threat prices up to the winner's value") {
  Market mkt({Valuation::UnitDemand({Rational(10)}), Valuation::UnitDemand({Rational(5)})}, 1);
  SellerPolicy policy = scenario_policy(mkt);
  OracleOptions opt;
  opt.delta = Rational(1);
  auto outcomes = brute_force_spe(mkt, policy, opt);
  CHECK(contains_price(outcomes, 0, Rational(10)));
  opt.oc_filter = true;
  auto capped = brute_force_spe(mkt, policy, opt);
  CHECK(!contains_price(capped, 0, Rational(10)));
}

TEST_CASE("demand reduction under the conservative filter") {
  Market mkt = demand_reduction_market();
  SellerPolicy policy = scenario_policy(mkt);
  OracleOptions opt;
  opt.delta = Rational(1, 4);
  opt.oc_filter = true;
  auto outcomes = brute_force_spe(mkt, policy, opt);
  REQUIRE(!outcomes.empty());
  CHECK(single_outcome_class(outcomes, opt.delta));
  for (const auto& o : outcomes) {
    CHECK(o.allocation.winner(0) == 0);  // OR takes the first item
    CHECK(o.allocation.winner(1) == 1);  // SUM gets the second
    CHECK(abs(o.prices[0] - Rational(1)) <= opt.delta);
    CHECK(o.prices[1] == Rational(0));
  }
}

TEST_CASE("additive two-by-two matches the per-item second price") {
  Market mkt({Valuation::Additive({Rational(7), Rational(3)}),
              Valuation::Additive({Rational(5), Rational(8)})},
             2);
  SellerPolicy policy{ascending_order(), max_tiebreak_rule(mkt)};
  OracleOptions opt;
  opt.delta = Rational(1, 8);
  opt.oc_filter = true;
  auto outcomes = brute_force_spe(mkt, policy, opt);
  REQUIRE(!outcomes.empty());
  CHECK(single_outcome_class(outcomes, opt.delta));
  auto eq = additive_outcome(mkt);
  for (const auto& o : outcomes) {
    CHECK(o.allocation == eq.outcome.allocation);
    for (int j = 0; j < 2; ++j) {
      CHECK(abs(o.prices[j] - eq.outcome.prices[j]) <= opt.delta);
    }
  }
}

TEST_CASE("oc oracle agrees with unit_wlrs_eq on small generic markets") {
  for (int seed = 0; seed < 6; ++seed) {
    Market mkt = random_unit_demand_market(2, 2, 12000 + seed, ValueLattice{32, 4, true});
    auto unit = unit_wlrs_eq(mkt);
    OracleOptions opt;
    opt.delta = Rational(1, 8);
    opt.oc_filter = true;
    auto outcomes = brute_force_spe(mkt, unit.tree.policy, opt);
    REQUIRE(!outcomes.empty());
    CHECK(single_outcome_class(outcomes, opt.delta));
    Outcome path = play(mkt, unit.tree.policy, unit.tree.profile);
    for (const auto& o : outcomes) {
      CHECK(o.allocation == path.allocation);
      for (int j = 0; j < mkt.items(); ++j) {
        // Judge at grid resolution: exact prices carry jitter crumbs.
        const Rational snapped =
            Rational(path.prices[j].floor_div(opt.delta)) * opt.delta;
        CHECK(abs(o.prices[j] - snapped) <= opt.delta);
      }
    }
  }
}

TEST_CASE("order matters good order keeps revenue near m") {
  const int m = 2;
  const Rational eps(1, 2);
  Market mkt = order_matters_market(m, eps);
  auto pair = order_matters_pair(m, eps);
  SellerPolicy policy{fixed_order(pair.good_order), lowest_index_tiebreak()};
  OracleOptions opt;
  opt.delta = Rational(1, 8);
  auto outcomes = brute_force_spe(mkt, policy, opt);
  REQUIRE(!outcomes.empty());
  for (const auto& o : outcomes) {
    CHECK(outcome_revenue(o) >= Rational(m) - Rational(m) * opt.delta);
    CHECK(o.prices[0] <= o.prices[1] + opt.delta);  // earlier-indexed item cheaper
    // The chain allocation: item j to buyer j+1.
    for (int j = 0; j < m; ++j) CHECK(o.allocation.winner(j) == j + 1);
  }
  CHECK(contains_price(outcomes, 0, Rational(1)));
}

TEST_CASE("budget exhaustion raises") {
  Market mkt = demand_reduction_market();
  SellerPolicy policy = scenario_policy(mkt);
  OracleOptions opt;
  opt.delta = Rational(1, 4);
  opt.budget = 10;
  CHECK_THROWS_AS(brute_force_spe(mkt, policy, opt), BudgetExceeded);
}

TEST_CASE("outcome grouping splits far-apart prices") {
  OracleOutcome a, b, c;
  Allocation alloc(1);
  alloc.assign(0, 0);
  a.allocation = b.allocation = c.allocation = alloc;
  a.prices = {Rational(1)};
  b.prices = {Rational(9, 8)};
  c.prices = {Rational(2)};
  auto classes = group_outcomes({a, b, c}, Rational(1, 8));
  CHECK(classes.size() == 2);
  CHECK(!single_outcome_class({a, b, c}, Rational(1, 8)));
  CHECK(single_outcome_class({a, b}, Rational(1, 8)));
}
