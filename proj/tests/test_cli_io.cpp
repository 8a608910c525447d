#include "doctest.h"
#include "json.hpp"
#include "seqauction/json_io.hpp"
#include "seqauction/scenarios.hpp"

#include <stdexcept>

using namespace seqauction;

TEST_CASE("market json round trip is exact") {
  for (int seed = 0; seed < 5; ++seed) {
    Market mkt = random_unit_demand_market(3, 4, 71000 + seed);
    const std::string text = market_to_json(mkt);
    Market back = market_from_json(text);
    CHECK(market_to_json(back) == text);
    for (int i = 0; i < mkt.buyers(); ++i) {
      for (ItemSet s = 0; s < (1u << mkt.items()); ++s) {
        CHECK(mkt.value(i, s) == back.value(i, s));
      }
    }
  }
  // Coverage and explicit kinds round-trip too.
  Market cov = random_coverage_market(2, 3, 72000);
  CHECK(market_to_json(market_from_json(market_to_json(cov))) == market_to_json(cov));
  Market ns = nonsingleton_market(2, 3, 73000);
  CHECK(market_to_json(market_from_json(market_to_json(ns))) == market_to_json(ns));
}

TEST_CASE("scenario families dispatch") {
  Market poa = market_from_scenario_json(R"({"family":"poa_additive","m":3})");
  CHECK(poa.items() == 3);
  CHECK(poa.valuation(0).item_value(0) == Rational(3));

  Market om = market_from_scenario_json(
      R"({"family":"order_matters","m":2,"epsilon":"1/2"})");
  CHECK(om.buyers() == 3);
  CHECK(om.valuation(2).item_value(1) == Rational(2));

  Market rnd = market_from_scenario_json(
      R"({"family":"random_unit_demand","n":2,"m":2,"seed":9,
          "lattice":{"max_numerator":32,"denominator":4,"dyadic_jitter":true}})");
  CHECK(rnd.buyers() == 2);

  CHECK_THROWS_AS(market_from_scenario_json(R"({"family":"nope"})"),
                  std::invalid_argument);
}

TEST_CASE("run reports are deterministic and carry verdicts") {
  const std::string spec = R"({
    "market": {"items": 1,
               "buyers": [{"kind": "unit_demand", "values": ["10/1"]},
                          {"kind": "unit_demand", "values": ["5/1"]}]},
    "task": "oracle", "delta": "1/1", "filter": "oc"})";
  auto first = run_scenario_json(spec);
  auto second = run_scenario_json(spec);
  CHECK(first.ok);
  CHECK(first.report_json == second.report_json);
  auto parsed = nlohmann::json::parse(first.report_json);
  CHECK(parsed["ok"] == true);
  CHECK(parsed["results"]["single_class"] == true);
  bool has_five = false;
  for (const auto& o : parsed["results"]["outcomes"]) {
    if (o["prices"][0] == "5/1") has_five = true;
    CHECK(o["allocation"][0] == 0);
  }
  CHECK(has_five);
}

TEST_CASE("minimal-we task reports prices and support order") {
  const std::string spec = R"({
    "market": {"family": "order_matters", "m": 3},
    "task": "minimal-we"})";
  auto result = run_scenario_json(spec);
  CHECK(result.ok);
  auto parsed = nlohmann::json::parse(result.report_json);
  for (const auto& p : parsed["results"]["prices"]) CHECK(p == "1/1");
  CHECK(parsed["results"]["revenue"] == "3/1");
  CHECK(parsed["results"]["support_order"] == nlohmann::json({2, 1, 0}));
}

TEST_CASE("build task with verification and poa") {
  const std::string spec = R"({
    "market": {"family": "poa_additive", "m": 5},
    "task": "verify", "build": "bad-additive", "delta": "1/16", "poa": true})";
  auto result = run_scenario_json(spec);
  CHECK(result.ok);
  auto parsed = nlohmann::json::parse(result.report_json);
  CHECK(parsed["results"]["outcome"]["welfare"] == "9/1");
  CHECK(parsed["results"]["poa"]["optimal"] == "25/1");
  CHECK(parsed["results"]["poa"]["ratio"] == "25/9");
  CHECK(parsed["results"]["spe"]["verdict"] == "spe");
  CHECK(parsed["results"]["optimistic_conservative"]["verdict"] == false);
}

TEST_CASE("folks-check task") {
  const std::string spec = R"({
    "market": {"family": "order_matters", "m": 3, "epsilon": "1/27"},
    "task": "folks-check",
    "omega": [1, 2, 3],
    "prices": ["1/1", "0/1", "0/1"],
    "order": [0, 1, 2]})";
  auto result = run_scenario_json(spec);
  CHECK(result.ok);

  const std::string searched = R"({
    "market": {"family": "order_matters", "m": 3, "epsilon": "1/27"},
    "task": "folks-check",
    "omega": [1, 2, 3],
    "prices": ["1/1", "0/1", "0/1"]})";
  auto found = run_scenario_json(searched);
  CHECK(found.ok);
  auto parsed = nlohmann::json::parse(found.report_json);
  CHECK(parsed["results"]["order"].size() == 3);
}

TEST_CASE("parse errors carry diagnostics") {
  CHECK_THROWS_AS(run_scenario_json("{not json"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      run_scenario_json(R"({"market":{"items":1,"buyers":[]},"task":"minimal-we"})"),
      "Market: need at least one buyer", std::invalid_argument);
}
