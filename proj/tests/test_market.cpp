#include "doctest.h"
#include "seqauction/market.hpp"
#include "seqauction/scenarios.hpp"

#include <stdexcept>
#include <vector>

using namespace seqauction;

namespace {

// Re-expresses any valuation as a full set-value table; the independent
// oracle for the marginal/residual identities.
Valuation explicit_copy(const Valuation& v) {
  std::vector<Rational> table(std::size_t{1} << v.num_items());
  for (ItemSet s = 0; s < table.size(); ++s) table[s] = v.value(s);
  return Valuation::Explicit(v.num_items(), std::move(table));
}

}  // namespace

TEST_CASE("value per kind") {
  auto ud = Valuation::UnitDemand({Rational(3), Rational(5)});
  CHECK(ud.value(0b11) == Rational(5));
  CHECK(ud.value(0) == Rational(0));

  auto add = Valuation::Additive({Rational(3), Rational(5)});
  CHECK(add.value(0b11) == Rational(8));
  CHECK(add.value(0) == Rational(0));

  const int m = 4;
  auto big = Valuation::Additive(std::vector<Rational>(m, Rational(m)));
  CHECK(big.value((ItemSet{1} << m) - 1) == Rational(m * m));

  auto cov = Valuation::Coverage(2, {Rational(1), Rational(1), Rational(1)},
                                 {0b011, 0b110});
  CHECK(cov.value(0) == Rational(0));
  CHECK(cov.value(0b01) == Rational(2));
  CHECK(cov.value(0b11) == Rational(3));

  CHECK_THROWS_AS(ud.value(ItemSet{1} << 2), std::out_of_range);
}

TEST_CASE("explicit table validation") {
  CHECK_THROWS_AS(Valuation::Explicit(1, {Rational(1), Rational(2)}),
                  std::invalid_argument);  // v(empty) != 0
  CHECK_THROWS_AS(Valuation::Explicit(2, {Rational(0)}), std::invalid_argument);
}

TEST_CASE("residual value") {
  Market mkt({Valuation::UnitDemand({Rational(7), Rational(5), Rational(3)})}, 3);
  Allocation none(3);
  CHECK(residual_value(mkt, 0, 0, none) == Rational(7));

  Allocation holding5(3);
  holding5.assign(1, 0);
  CHECK(residual_value(mkt, 0, 2, holding5) == Rational(0));  // clamped

  Market mkt2({Valuation::UnitDemand({Rational(3), Rational(5)})}, 2);
  Allocation holding3(2);
  holding3.assign(0, 0);
  CHECK(residual_value(mkt2, 0, 1, holding3) == Rational(2));
  // Against the set-function oracle: value({old,new}) - value({old}).
  auto table = explicit_copy(mkt2.valuation(0));
  CHECK(residual_value(mkt2, 0, 1, holding3) ==
        table.value(0b11) - table.value(0b01));

  Market additive({Valuation::Additive({Rational(1)})}, 1);
  CHECK_THROWS_AS(residual_value(additive, 0, 0, Allocation(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(residual_value(mkt2, 0, 0, holding3), std::invalid_argument);
}

TEST_CASE("marginal value") {
  Market add({Valuation::Additive({Rational(4), Rational(9)})}, 2);
  Allocation g(2);
  g.assign(0, 0);
  CHECK(marginal_value(add, 0, 1, g) == Rational(9));

  Market ud({Valuation::UnitDemand({Rational(9), Rational(4)})}, 2);
  Allocation best(2);
  best.assign(0, 0);
  CHECK(marginal_value(ud, 0, 1, best) == Rational(0));

  Market cov({Valuation::Coverage(2, {Rational(1), Rational(1), Rational(1)},
                                  {0b011, 0b110})},
             2);
  Allocation first(2);
  first.assign(0, 0);
  CHECK(marginal_value(cov, 0, 1, first) == Rational(1));

  CHECK_THROWS_AS(marginal_value(add, 0, 0, g), std::invalid_argument);
}

TEST_CASE("value is monotone under inclusion") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 4;
    std::vector<Valuation> vals;
    vals.push_back(Valuation::Additive(
        {Rational(rng.uniform(0, 9)), Rational(rng.uniform(0, 9)),
         Rational(rng.uniform(0, 9)), Rational(rng.uniform(0, 9))}));
    vals.push_back(Valuation::UnitDemand(
        {Rational(rng.uniform(0, 9)), Rational(rng.uniform(0, 9)),
         Rational(rng.uniform(0, 9)), Rational(rng.uniform(0, 9))}));
    vals.push_back(Valuation::Coverage(
        m, {Rational(rng.uniform(0, 5)), Rational(rng.uniform(0, 5)), Rational(rng.uniform(0, 5))},
        {static_cast<std::uint32_t>(rng.uniform(1, 7)),
         static_cast<std::uint32_t>(rng.uniform(1, 7)),
         static_cast<std::uint32_t>(rng.uniform(1, 7)),
         static_cast<std::uint32_t>(rng.uniform(1, 7))}));
    for (const auto& v : vals) {
      for (ItemSet s = 0; s < (1u << m); ++s) {
        for (int j = 0; j < m; ++j) {
          if (!set_contains(s, j)) {
            CHECK(v.value(set_with(s, j)) >= v.value(s));
          }
        }
      }
    }
  }
}

TEST_CASE("coverage marginals shrink along random chains") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 5;
    Market mkt = random_coverage_market(1, m, 1000 + trial);
    Allocation g(m);
    // Random growth order; the marginal of the remaining item must not rise.
    std::vector<int> order{0, 1, 2, 3, 4};
    for (int k = 4; k > 0; --k) std::swap(order[k], order[rng.uniform(0, k)]);
    const int probe = order[m - 1];
    Rational last = marginal_value(mkt, 0, probe, g);
    for (int k = 0; k + 1 < m; ++k) {
      g.assign(order[k], 0);
      const Rational now = marginal_value(mkt, 0, probe, g);
      CHECK(now <= last);
      last = now;
    }
  }
}

TEST_CASE("residual equals marginal for unit-demand everywhere") {
  // Cross-oracle identity over every partial allocation of a 3x6 market.
  Market mkt = random_unit_demand_market(3, 6, 500);
  Allocation sold(6);
  long long checked = 0;
  auto rec = [&](auto&& self, int item) -> void {
    if (item == 6) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 6; ++j) {
          if (sold.sold(j)) continue;
          ++checked;
          CHECK(residual_value(mkt, i, j, sold) == marginal_value(mkt, i, j, sold));
        }
      }
      return;
    }
    for (int w = -1; w < 3; ++w) {
      if (w >= 0) {
        sold.assign(item, w);
        self(self, item + 1);
        sold = sold.assigned(item, Allocation::kUnsold);
      } else {
        self(self, item + 1);
      }
    }
  };
  rec(rec, 0);
  CHECK(checked > 0);
}

TEST_CASE("allocation bookkeeping") {
  Allocation a(3);
  CHECK(a.sold_count() == 0);
  a.assign(1, 2);
  CHECK(a.sold(1));
  CHECK(a.winner(1) == 2);
  CHECK(a.bundle(2) == ItemSet{0b010});
  const Allocation b = a.assigned(0, 1);
  CHECK(!a.sold(0));
  CHECK(b.sold(0));
  CHECK(b.sold_count() == 2);
  CHECK(a < b);
  CHECK(a.str() == "[-,2,-]");
}

TEST_CASE("market validation") {
  CHECK_THROWS_AS(Market({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(Market({Valuation::Additive({Rational(1)})}, 2),
                  std::invalid_argument);
}
