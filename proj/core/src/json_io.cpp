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

#include "seqauction/json_io.hpp"

#include <stdexcept>

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

using nlohmann::json;

json rationals_to_json(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

std::vector<Rational> rationals_from_json(const json& arr, const char* what) {
  if (!arr.is_array()) throw std::invalid_argument(std::string(what) + ": expected array");
  std::vector<Rational> out;
  for (const auto& v : arr) out.push_back(Rational::parse(v.get<std::string>()));
  return out;
}

json allocation_to_json(const Allocation& alloc) {
  json arr = json::array();
  for (int j = 0; j < alloc.items(); ++j) {
    if (alloc.sold(j)) {
      arr.push_back(alloc.winner(j));
    } else {
      arr.push_back(nullptr);
    }
  }
  return arr;
}

Allocation allocation_from_json(const json& arr, int items) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != items) {
    throw std::invalid_argument("allocation: expected one entry per item");
  }
  Allocation alloc(items);
  for (int j = 0; j < items; ++j) {
    if (!arr[j].is_null()) alloc.assign(j, arr[j].get<int>());
  }
  return alloc;
}

json valuation_to_json(const Valuation& v) {
  json b;
  b["kind"] = to_string(v.kind());
  switch (v.kind()) {
    case ValuationKind::kAdditive:
    case ValuationKind::kUnitDemand:
      b["values"] = rationals_to_json(v.item_values());
      break;
    case ValuationKind::kCoverage: {
      b["weights"] = rationals_to_json(v.element_weights());
      json sets = json::array();
      for (std::uint32_t mask : v.item_covers()) {
        json one = json::array();
        for (std::size_t e = 0; e < v.element_weights().size(); ++e) {
          if ((mask >> e) & 1u) one.push_back(static_cast<int>(e));
        }
        sets.push_back(one);
      }
      b["sets"] = sets;
      break;
    }
    case ValuationKind::kExplicit:
      b["values"] = rationals_to_json(v.table());
      break;
  }
  return b;
}

Valuation valuation_from_json(const json& b, int items) {
  const std::string kind = b.at("kind").get<std::string>();
  if (kind == "additive") return Valuation::Additive(rationals_from_json(b.at("values"), "additive"));
  if (kind == "unit_demand") {
    return Valuation::UnitDemand(rationals_from_json(b.at("values"), "unit_demand"));
  }
  if (kind == "coverage") {
    auto weights = rationals_from_json(b.at("weights"), "coverage weights");
    std::vector<std::uint32_t> covers;
    for (const auto& set : b.at("sets")) {
      std::uint32_t mask = 0;
      for (const auto& e : set) mask |= 1u << e.get<int>();
      covers.push_back(mask);
    }
    return Valuation::Coverage(items, std::move(weights), std::move(covers));
  }
  if (kind == "explicit") {
    return Valuation::Explicit(items, rationals_from_json(b.at("values"), "explicit"));
  }
  throw std::invalid_argument("unknown valuation kind '" + kind + "'");
}

Market market_from(const json& spec) {
  const int items = spec.at("items").get<int>();
  std::vector<Valuation> buyers;
  for (const auto& b : spec.at("buyers")) buyers.push_back(valuation_from_json(b, items));
  std::string label = spec.value("label", std::string());
  return Market(std::move(buyers), items, std::move(label));
}

Market market_from_family(const json& spec) {
  const std::string family = spec.at("family").get<std::string>();
  auto eps_or = [&](const Rational& fallback) {
    return spec.contains("epsilon") ? Rational::parse(spec.at("epsilon").get<std::string>())
                                    : fallback;
  };
  auto lattice_of = [&]() {
    ValueLattice lattice;
    if (spec.contains("lattice")) {
      const json& l = spec.at("lattice");
      lattice.max_numerator = l.value("max_numerator", lattice.max_numerator);
      lattice.denominator = l.value("denominator", lattice.denominator);
      lattice.dyadic_jitter = l.value("dyadic_jitter", lattice.dyadic_jitter);
    }
    return lattice;
  };
  if (family == "poa_additive") return poa_additive_market(spec.at("m").get<int>());
  if (family == "low_revenue") {
    return low_revenue_market(spec.at("m").get<int>(), eps_or(Rational(1, 100)));
  }
  if (family == "order_matters") {
    const int m = spec.at("m").get<int>();
    if (spec.contains("epsilon")) return order_matters_market(m, eps_or(Rational(1)));
    return order_matters_market(m);
  }
  if (family == "demand_reduction") return demand_reduction_market();
  if (family == "nonsingleton") {
    return nonsingleton_market(spec.at("n").get<int>(), spec.at("m").get<int>(),
                               spec.value("seed", 0ull));
  }
  if (family == "random_unit_demand") {
    return random_unit_demand_market(spec.at("n").get<int>(), spec.at("m").get<int>(),
                                     spec.value("seed", 0ull), lattice_of());
  }
  if (family == "random_additive") {
    return random_additive_market(spec.at("n").get<int>(), spec.at("m").get<int>(),
                                  spec.value("seed", 0ull), lattice_of());
  }
  if (family == "random_coverage") {
    CoverageParams params;
    if (spec.contains("coverage")) {
      const json& c = spec.at("coverage");
      params.universe = c.value("universe", params.universe);
      params.weight_max_num = c.value("weight_max_num", params.weight_max_num);
      params.weight_den = c.value("weight_den", params.weight_den);
    }
    return random_coverage_market(spec.at("n").get<int>(), spec.at("m").get<int>(),
                                  spec.value("seed", 0ull), params);
  }
  throw std::invalid_argument("unknown market family '" + family + "'");
}

Market parse_market(const json& spec) {
  if (spec.contains("family")) return market_from_family(spec);
  return market_from(spec);
}

json outcome_to_json(const Outcome& out) {
  json o;
  o["allocation"] = allocation_to_json(out.allocation);
  o["prices"] = rationals_to_json(out.prices);
  o["utilities"] = rationals_to_json(out.utilities);
  o["revenue"] = out.revenue.str();
  o["welfare"] = out.welfare.str();
  return o;
}

json spe_report_to_json(const EquilibriumReport& report) {
  json r;
  r["verdict"] = report.is_spe() ? "spe" : "not-spe";
  r["nodes_checked"] = report.nodes_checked;
  if (report.witness) {
    json w;
    w["node"] = report.witness->node.str();
    w["buyer"] = report.witness->buyer;
    w["bid"] = report.witness->bid.str();
    w["gain"] = report.witness->gain.str();
    w["grid_marginal"] = report.witness->grid_marginal;
    r["witness"] = w;
  }
  return r;
}

json oc_report_to_json(const OcReport& report) {
  json r;
  r["verdict"] = report.ok;
  if (report.witness) {
    json w;
    w["node"] = report.witness->node.str();
    w["buyer"] = report.witness->buyer;
    w["item"] = report.witness->item;
    w["bid"] = report.witness->bid.str();
    w["cap"] = report.witness->cap.str();
    r["witness"] = w;
  }
  return r;
}

SellerPolicy policy_from_spec(const json& spec, const Market& market,
                              const UnitWlrsTree* unit) {
  const std::string which = spec.value("policy", std::string("ascending"));
  const std::string tb = spec.value("tiebreak", std::string("max-marginal"));
  TieBreak tie;
  if (tb == "max-marginal") {
    tie = max_marginal_tiebreak(market);
  } else if (tb == "lowest-index") {
    tie = lowest_index_tiebreak();
  } else if (tb == "max-value") {
    tie = max_tiebreak_rule(market);
  } else {
    throw std::invalid_argument("unknown tiebreak '" + tb + "'");
  }
  if (which == "ascending") return SellerPolicy{ascending_order(), tie};
  if (which == "descending") {
    std::vector<int> order;
    for (int j = market.items() - 1; j >= 0; --j) order.push_back(j);
    return SellerPolicy{fixed_order(order), tie};
  }
  if (which == "support") {
    if (!unit) throw std::invalid_argument("policy 'support' needs a unit-demand market");
    return unit->tree.policy;
  }
  throw std::invalid_argument("unknown policy '" + which + "'");
}

json run_task(const json& spec, bool& ok) {
  Market market = parse_market(spec.at("market"));
  const std::string task = spec.at("task").get<std::string>();
  const Rational delta =
      spec.contains("delta") ? Rational::parse(spec.at("delta").get<std::string>())
                             : Rational(1, 16);
  json results;
  results["market"] = json::parse(market_to_json(market));
  ok = true;

  if (task == "minimal-we") {
    WalrasianEquilibrium we;
    if (market.all_kind(ValuationKind::kUnitDemand)) {
      we = minimal_walrasian(market);
      auto values = unit_demand_matrix(market);
      auto supp = supporters(values, we);
      json s;
      for (const auto& [item, buyer] : supp) s[std::to_string(item)] = buyer;
      results["supporters"] = s;
      json order = json::array();
      for (int j : support_order(we, supp)) order.push_back(j);
      results["support_order"] = order;
    } else if (market.all_kind(ValuationKind::kAdditive)) {
      we = additive_walrasian(market);
    } else {
      throw std::invalid_argument("minimal-we: unit-demand or additive market required");
    }
    results["prices"] = rationals_to_json(we.prices);
    results["allocation"] = allocation_to_json(we.allocation);
    results["utilities"] = rationals_to_json(we.utilities);
    results["revenue"] = we.revenue().str();
    results["welfare"] = we.welfare.str();
    return results;
  }

  if (task == "folks-check") {
    Allocation omega = allocation_from_json(spec.at("omega"), market.items());
    auto prices = rationals_from_json(spec.at("prices"), "prices");
    if (spec.contains("order")) {
      std::vector<int> order;
      for (const auto& j : spec.at("order")) order.push_back(j.get<int>());
      auto cert = folks_check(market, omega, prices, order);
      results["hypothesis_ok"] = cert.hypothesis_ok;
      results["valid"] = cert.valid;
      if (cert.witness) {
        results["witness"] = {{"buyer", cert.witness->first},
                              {"position", cert.witness->second}};
      }
      ok = cert.valid;
    } else {
      auto found = folks_search(market, omega, prices);
      results["valid"] = found.has_value();
      if (found) {
        json order = json::array();
        for (int j : *found) order.push_back(j);
        results["order"] = order;
      }
      ok = found.has_value();
    }
    return results;
  }

  if (task == "build" || task == "verify" || task == "poa") {
    const std::string build = spec.value(
        "build", market.all_kind(ValuationKind::kAdditive) ? "additive" : "unit-wlrs-eq");
    std::optional<StrategyTree> tree;
    if (build == "unit-wlrs-eq") {
      tree = unit_wlrs_eq(market).tree;
    } else if (build == "additive") {
      tree = additive_outcome(market).tree;
    } else if (build == "bad-additive") {
      tree = bad_spe_additive(market.items());
    } else if (build == "low-revenue") {
      tree = low_revenue_spe(
          market.items(),
          spec.contains("epsilon") ? Rational::parse(spec.at("epsilon").get<std::string>())
                                   : Rational(1, 100));
    } else if (build == "nonsingleton") {
      tree = nonsingleton_spe(market);
    } else if (build == "greedy") {
      tree = greedy_submodular(market).tree;
    } else {
      throw std::invalid_argument("unknown build '" + build + "'");
    }
    results["provenance"] = tree->provenance;
    Outcome out = play(*tree->market, tree->policy, tree->profile);
    results["outcome"] = outcome_to_json(out);
    if (spec.value("export_tree", false)) {
      results["tree"] = json::parse(
          export_tree_json(*tree, spec.value("max_nodes", 10000)));
    }
    if (task == "verify" || spec.value("verify", false)) {
      auto spe = verify_spe(*tree->market, tree->policy, tree->profile, delta);
      results["spe"] = spe_report_to_json(spe);
      auto oc = is_optimistic_conservative(*tree->market, tree->policy, tree->profile);
      results["optimistic_conservative"] = oc_report_to_json(oc);
      ok = spe.is_spe();
    }
    if (task == "poa" || spec.value("poa", false)) {
      PoaResult r = poa(*tree->market, out);
      results["poa"] = {{"optimal", r.optimal.str()},
                        {"ratio", r.infinite ? std::string("inf") : r.ratio.str()}};
    }
    return results;
  }

  if (task == "oracle") {
    OracleOptions options;
    options.delta = delta.is_zero() ? Rational(1, 8) : delta;
    options.oc_filter = spec.value("filter", std::string("all")) == "oc";
    options.budget = spec.value("budget", options.budget);
    std::optional<UnitWlrsTree> unit;
    if (spec.value("policy", std::string()) == "support") {
      unit = unit_wlrs_eq(market);
    }
    SellerPolicy policy = policy_from_spec(spec, market, unit ? &*unit : nullptr);
    auto outcomes = brute_force_spe(market, policy, options);
    json arr = json::array();
    for (const auto& o : outcomes) {
      json one;
      one["allocation"] = allocation_to_json(o.allocation);
      one["prices"] = rationals_to_json(o.prices);
      one["revenue"] = outcome_revenue(o).str();
      arr.push_back(one);
    }
    results["outcomes"] = arr;
    results["classes"] = group_outcomes(outcomes, options.delta).size();
    results["single_class"] = single_outcome_class(outcomes, options.delta);
    ok = !outcomes.empty();
    return results;
  }

  throw std::invalid_argument("unknown task '" + task + "'");
}

}  // namespace

std::string market_to_json(const Market& market) {
  json spec;
  spec["items"] = market.items();
  if (!market.label().empty()) spec["label"] = market.label();
  json buyers = json::array();
  for (int i = 0; i < market.buyers(); ++i) buyers.push_back(valuation_to_json(market.valuation(i)));
  spec["buyers"] = buyers;
  return spec.dump();
}

Market market_from_json(const std::string& text) {
  return market_from(json::parse(text));
}

Market market_from_scenario_json(const std::string& text) {
  return parse_market(json::parse(text));
}

RunResult run_scenario_json(const std::string& spec_json) {
  json spec;
  try {
    spec = json::parse(spec_json);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario parse error: ") + e.what());
  }
  RunResult result;
  json report;
  report["scenario"] = spec;
  report["results"] = run_task(spec, result.ok);
  report["ok"] = result.ok;
  result.report_json = report.dump(2);
  return result;
}

}  // namespace seqauction
