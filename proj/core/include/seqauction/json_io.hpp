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

#include <string>

#include "seqauction/market.hpp"

namespace seqauction {

// JSON is the only ingestion path. Markets serialize as
//   {"buyers": [{"kind": "...", "values": [...] | "weights"/"sets": ...}],
//    "items": m, "label": "..."}
// with every rational in exact "num/den" form; a round trip is bit-exact.

std::string market_to_json(const Market& market);
Market market_from_json(const std::string& text);

/// Scenario dispatch: either an inline market or
///   {"family": "poa_additive" | "low_revenue" | "order_matters" |
///              "demand_reduction" | "nonsingleton" | "random_unit_demand" |
///              "random_additive" | "random_coverage", ...params}.
Market market_from_scenario_json(const std::string& text);

struct RunResult {
  std::string report_json;  // canonical: sorted keys, exact rationals
  bool ok = false;          // every requested verdict affirmative
};

/// Executes one scenario spec:
///   {"market": {...} | {"family": ...}, "task": "minimal-we" | "folks-check"
///    | "build" | "verify" | "oracle" | "poa", "build": "...", "delta": "1/8",
///    "filter": "oc"|"all", "budget": n, "seed": k, "omega": [...],
///    "prices": [...], "order": [...]}
/// Deterministic given the spec (seeds are explicit fields); the report
/// carries no timing, so identical specs yield byte-identical JSON.
RunResult run_scenario_json(const std::string& spec_json);

}  // namespace seqauction
