#include "doctest.h"
#include "seqauction/equilibrium.hpp"
#include "seqauction/game.hpp"
#include "seqauction/scenarios.hpp"
#include "seqauction/strategies.hpp"
#include "seqauction/walrasian.hpp"

#include <stdexcept>

using namespace seqauction;

TEST_CASE("unit_wlrs_eq sells order_matters in reverse and earns m") {
  for (int m : {2, 3, 4}) {
    Market mkt = order_matters_market(m);
    auto unit = unit_wlrs_eq(mkt);
    // Root node sells the highest-index item first.
    Allocation root(m);
    auto info = unit.node_info(root);
    REQUIRE(static_cast<int>(info.sale_order.size()) == m);
    for (int k = 0; k < m; ++k) CHECK(info.sale_order[k] == m - 1 - k);

    Outcome out = play(mkt, unit.tree.policy, unit.tree.profile);
    CHECK(out.revenue == Rational(m));
    for (int j = 0; j < m; ++j) {
      CHECK(out.prices[j] == Rational(1));
      CHECK(out.allocation.winner(j) == j + 1);
    }
  }
}

TEST_CASE("unit_wlrs_eq on a single item is a second-price sale") {
  Market mkt({Valuation::UnitDemand({Rational(10)}), Valuation::UnitDemand({Rational(4)})}, 1);
  auto unit = unit_wlrs_eq(mkt);
  Outcome out = play(mkt, unit.tree.policy, unit.tree.profile);
  CHECK(out.allocation.winner(0) == 0);
  CHECK(out.prices[0] == Rational(4));
}

TEST_CASE("unit_wlrs_eq on-path prices equal the root minimal prices") {
  for (int seed = 0; seed < 10; ++seed) {
    Market mkt = random_unit_demand_market(3, 4, 6100 + seed);
    auto unit = unit_wlrs_eq(mkt);
    auto root_we = minimal_walrasian(mkt);
    Outcome out = play(mkt, unit.tree.policy, unit.tree.profile);
    for (int j = 0; j < mkt.items(); ++j) {
      CHECK(out.prices[j] == root_we.prices[j]);
      // Positive-price items land per the root equilibrium; zero-priced
      // leftovers may be handed out differently as residuals shift.
      if (root_we.prices[j].sign() > 0) {
        CHECK(out.allocation.winner(j) == root_we.allocation.winner(j));
      }
    }
  }
}

TEST_CASE("unit_wlrs_eq continuation matches its node equilibria on generic inputs") {
  Market mkt = random_unit_demand_market(3, 3, 777);
  auto unit = unit_wlrs_eq(mkt);
  Allocation root(3);
  auto info = unit.node_info(root);
  const NodeAction& act = unit.tree.profile.at(root);
  for (int i = 0; i < 3; ++i) CHECK(act.continuation[i] == info.we.utilities[i]);
}

TEST_CASE("unit_wlrs_eq is optimistic conservative") {
  for (int seed = 0; seed < 6; ++seed) {
    Market mkt = random_unit_demand_market(3, 3, 4200 + seed);
    auto unit = unit_wlrs_eq(mkt);
    CHECK(is_optimistic_conservative(mkt, unit.tree.policy, unit.tree.profile).ok);
  }
}

TEST_CASE("unit_wlrs_eq passes spe verification on random markets") {
  for (int seed = 0; seed < 5; ++seed) {
    Market mkt = random_unit_demand_market(3, 3, 5100 + seed);
    auto unit = unit_wlrs_eq(mkt);
    auto report = verify_spe(mkt, unit.tree.policy, unit.tree.profile, Rational(1, 16));
    CHECK(report.is_spe());
  }
}

TEST_CASE("first winner prefers its item over any taker's aftermath") {
  // The root winner of the first item weakly prefers the path to the
  // recomputed equilibrium after the item goes to anybody else.
  for (int seed = 0; seed < 8; ++seed) {
    Market mkt = random_unit_demand_market(4, 4, 9300 + seed);
    auto unit = unit_wlrs_eq(mkt);
    Allocation root(mkt.items());
    auto info = unit.node_info(root);
    const int item = info.sale_order.front();
    const int col = static_cast<int>(
        std::find(info.columns.begin(), info.columns.end(), item) -
        info.columns.begin());
    const int winner = info.we.allocation.winner(col);
    const Rational path_utility = info.we.utilities[winner];
    for (int taker = 0; taker < mkt.buyers(); ++taker) {
      if (taker == winner) continue;
      auto res = residual_market(mkt, root.assigned(item, taker));
      auto after = minimal_walrasian(res.values);
      CHECK(path_utility >= after.utilities[winner]);
    }
  }
}

TEST_CASE("additive outcome is per-item second price") {
  Market poa = poa_additive_market(4);
  auto eq = additive_outcome(poa);
  for (int j = 0; j < 4; ++j) {
    CHECK(eq.outcome.allocation.winner(j) == 0);
    CHECK(eq.outcome.prices[j] == Rational(1));
  }
  CHECK(eq.outcome.revenue == Rational(4));

  Market solo({Valuation::Additive({Rational(3), Rational(8)})}, 2);
  auto solo_eq = additive_outcome(solo);
  CHECK(solo_eq.outcome.revenue == Rational(0));

  Market trio({Valuation::Additive({Rational(7)}), Valuation::Additive({Rational(3)}),
               Valuation::Additive({Rational(5)})},
              1);
  auto trio_eq = additive_outcome(trio);
  CHECK(trio_eq.outcome.allocation.winner(0) == 0);
  CHECK(trio_eq.outcome.prices[0] == Rational(5));
}

TEST_CASE("additive outcome verifies as spe and conservative") {
  for (int seed = 0; seed < 4; ++seed) {
    Market mkt = random_additive_market(2, 3, 660 + seed, ValueLattice{16, 2, true});
    auto eq = additive_outcome(mkt);
    CHECK(verify_spe(mkt, eq.tree.policy, eq.tree.profile, Rational(1, 16)).is_spe());
    CHECK(is_optimistic_conservative(mkt, eq.tree.policy, eq.tree.profile).ok);
  }
}

TEST_CASE("bad and low-revenue equilibria verify but are not conservative") {
  for (int m : {2, 3, 5}) {
    StrategyTree bad = bad_spe_additive(m);
    CHECK(verify_spe(*bad.market, bad.policy, bad.profile, Rational(1, 16)).is_spe());
    auto oc = is_optimistic_conservative(*bad.market, bad.policy, bad.profile);
    CHECK(!oc.ok);
    REQUIRE(oc.witness.has_value());
    // The violation sits in the retaliation regime where both bid m.
    CHECK(oc.witness->bid == Rational(m));

    StrategyTree low = low_revenue_spe(m, Rational(1, 100));
    CHECK(verify_spe(*low.market, low.policy, low.profile, Rational(1, 16)).is_spe());
    CHECK(!is_optimistic_conservative(*low.market, low.policy, low.profile).ok);
  }
}

TEST_CASE("low revenue against the walrasian benchmark") {
  const Rational eps(1, 100);
  for (int m : {2, 4, 8}) {
    StrategyTree low = low_revenue_spe(m, eps);
    Outcome out = play(*low.market, low.policy, low.profile);
    CHECK(out.revenue == eps * Rational(m));
    CHECK(additive_walrasian(*low.market).revenue() == Rational(m - 1) + eps);
  }
}

TEST_CASE("nonsingleton equilibrium hands everything to buyer zero for free") {
  // Two single-minded buyers on disjoint pairs.
  std::vector<Rational> t0(16, Rational(0)), t1(16, Rational(0));
  for (unsigned s = 0; s < 16; ++s) {
    if ((s & 0b0011u) == 0b0011u) t0[s] = Rational(6);
    if ((s & 0b1100u) == 0b1100u) t1[s] = Rational(9);
  }
  Market mkt({Valuation::Explicit(4, t0), Valuation::Explicit(4, t1)}, 4);
  StrategyTree tree = nonsingleton_spe(mkt);
  Outcome out = play(mkt, tree.policy, tree.profile);
  for (int j = 0; j < 4; ++j) CHECK(out.allocation.winner(j) == 0);
  CHECK(out.revenue == Rational(0));
  CHECK(verify_spe(mkt, tree.policy, tree.profile, Rational(1, 16)).is_spe());

  Market bad({Valuation::Additive({Rational(1), Rational(0)}),
              Valuation::Additive({Rational(0), Rational(1)})},
             2);
  CHECK_THROWS_AS(nonsingleton_spe(bad), std::invalid_argument);
}

TEST_CASE("greedy equilibrium leaves buyers nothing and earns half of opt") {
  for (int seed = 0; seed < 8; ++seed) {
    Market mkt = random_coverage_market(3, 4, 880 + seed);
    auto greedy = greedy_submodular(mkt);
    Outcome out = play(mkt, greedy.tree.policy, greedy.tree.profile);
    for (const auto& u : out.utilities) CHECK(u == Rational(0));
    const Rational opt = optimal_welfare(mkt);
    CHECK(out.revenue * Rational(2) >= opt);
    CHECK(out.revenue == out.welfare);
  }
}

TEST_CASE("greedy with one additive-as-coverage buyer sells high to low") {
  // Additive valuation encoded as coverage: item j covers element j alone.
  std::vector<Rational> weights{Rational(2), Rational(7), Rational(5)};
  Market mkt({Valuation::Coverage(3, weights, {0b001u, 0b010u, 0b100u})}, 3);
  auto greedy = greedy_submodular(mkt);
  CHECK(greedy.order == std::vector<int>{1, 2, 0});
  Outcome out = play(mkt, greedy.tree.policy, greedy.tree.profile);
  CHECK(out.revenue == out.welfare);
  CHECK(out.welfare == Rational(14));
  CHECK(out.welfare == optimal_welfare(mkt));
}

TEST_CASE("greedy trees verify as spe") {
  for (int seed = 0; seed < 3; ++seed) {
    Market mkt = random_coverage_market(2, 3, 991 + seed);
    auto greedy = greedy_submodular(mkt);
    CHECK(verify_spe(mkt, greedy.tree.policy, greedy.tree.profile, Rational(1, 16)).is_spe());
  }
}

TEST_CASE("order matters pair") {
  const int m = 3;
  const Rational eps(1, 27);
  Market mkt = order_matters_market(m, eps);
  auto pair = order_matters_pair(m, eps);
  CHECK(folks_check(mkt, pair.bad_allocation, pair.bad_prices, pair.bad_order).valid);
  CHECK(minimal_walrasian(mkt).revenue() == Rational(m));
  CHECK(pair.good_order == std::vector<int>{2, 1, 0});
}

TEST_CASE("tree export names every reachable node once") {
  Market mkt({Valuation::UnitDemand({Rational(4), Rational(2)}),
              Valuation::UnitDemand({Rational(3), Rational(5)})},
             2);
  auto unit = unit_wlrs_eq(mkt);
  const std::string json = export_tree_json(unit.tree);
  CHECK(json.find("\"provenance\":\"unit_wlrs_eq\"") != std::string::npos);
  // Root plus two depth-one nodes for each of two buyers: 1 + 2 = 3 interior
  // allocations on two items with two buyers... root and both one-item nodes.
  CHECK(json.find("[-,-]") != std::string::npos);
  CHECK(json.find("[0,-]") != std::string::npos);
  CHECK(json.find("[1,-]") != std::string::npos);
}
