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

// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>

#include "seqauction/reproduce.hpp"

int main() {
  bool all = true;
  for (int i = 1; i <= seqauction::criteria_count(); ++i) {
    const auto r = seqauction::run_criterion(i);
    std::printf("%-4s %-58s %s (%.2f s)\n", r.id.c_str(), r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.seconds);
    if (!r.pass) std::printf("     %s\n", r.details.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
