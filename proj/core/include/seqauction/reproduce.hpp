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
#include <vector>

namespace seqauction {

// The reproduction suite: eleven checks covering the library's headline
// results, each with pinned instances, seeds, grids and tolerances. The CLI
// `reproduce` command and the acceptance test binary both run these.

struct CriterionResult {
  std::string id;    // "C1".."C11"
  std::string name;
  std::vector<std::string> modules;  // for --only filtering
  bool pass = false;
  std::string details;  // expected-vs-observed on failure, summary on pass
  double seconds = 0.0;
};

int criteria_count();

/// Runs one criterion (1-based index).
CriterionResult run_criterion(int index);

/// Runs every criterion whose module tags intersect `only` (all when empty).
std::vector<CriterionResult> run_all_criteria(const std::vector<std::string>& only = {});

std::string criteria_json(const std::vector<CriterionResult>& results);
std::string criteria_csv(const std::vector<CriterionResult>& results);

}  // namespace seqauction
