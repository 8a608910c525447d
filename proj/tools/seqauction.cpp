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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "seqauction/json_io.hpp"
#include "seqauction/reproduce.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

int cmd_run(const std::string& spec_path, const std::string& out_dir,
            const std::string& delta, long long budget, long long seed,
            bool has_budget, bool has_seed) {
  nlohmann::json spec = nlohmann::json::parse(read_file(spec_path));
  if (!delta.empty()) spec["delta"] = delta;
  if (has_budget) spec["budget"] = budget;
  if (has_seed) {
    if (spec.contains("market") && spec["market"].contains("family")) {
      spec["market"]["seed"] = seed;
    }
    spec["seed"] = seed;
  }

  const auto start = std::chrono::steady_clock::now();
  seqauction::RunResult result = seqauction::run_scenario_json(spec.dump());
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (out_dir.empty()) {
    std::cout << result.report_json << "\n";
  } else {
    std::filesystem::create_directories(out_dir);
    write_file(std::filesystem::path(out_dir) / "report.json", result.report_json + "\n");
  }
  std::cerr << "elapsed: " << elapsed << " s\n";
  return result.ok ? 0 : 2;
}

int cmd_reproduce(const std::vector<std::string>& only, const std::string& out_dir) {
  auto results = seqauction::run_all_criteria(only);
  bool all = !results.empty();
  for (const auto& r : results) {
    std::printf("%-4s %-58s %s (%.2f s)\n", r.id.c_str(), r.name.c_str(),
                r.pass ? "PASS" : "FAIL", r.seconds);
    if (!r.pass) std::printf("     %s\n", r.details.c_str());
    all = all && r.pass;
  }
  const std::string dir = out_dir.empty() ? "reproduce_out" : out_dir;
  std::filesystem::create_directories(dir);
  write_file(std::filesystem::path(dir) / "summary.json",
             seqauction::criteria_json(results));
  write_file(std::filesystem::path(dir) / "summary.csv",
             seqauction::criteria_csv(results));
  std::cerr << "summary written to " << dir << "/summary.{json,csv}\n";
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential first-price auctions: equilibria, walrasian prices, oracles"};
  app.require_subcommand(1);

  std::string spec_path, out_dir, delta;
  long long budget = 0, seed = 0;
  auto* run = app.add_subcommand("run", "execute one scenario spec (JSON)");
  run->add_option("spec", spec_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "write report.json into this directory");
  run->add_option("--delta", delta, "bid grid step, e.g. 1/16");
  auto* budget_opt = run->add_option("--budget", budget, "oracle work budget");
  auto* seed_opt = run->add_option("--seed", seed, "override the scenario seed");

  std::vector<std::string> only;
  std::string rep_out;
  auto* rep = app.add_subcommand("reproduce", "run the bundled result suite");
  rep->add_option("--only", only, "restrict to criteria touching these modules");
  rep->add_option("--out", rep_out, "summary output directory (default reproduce_out)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return cmd_run(spec_path, out_dir, delta, budget, seed, budget_opt->count() > 0,
                     seed_opt->count() > 0);
    }
    return cmd_reproduce(only, rep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
