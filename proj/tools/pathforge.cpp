// Copyright 2026 The pathforge Authors
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

// pathforge command-line front end.

#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pathforge/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pathforge: transition pathways and electrification analytics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pathforge::kToolVersion));

  pathforge::CommandOptions opts;
  std::string dataset, out = "out";
  unsigned long long seed = 0;
  app.add_option("--dataset", dataset, "dataset JSON file");
  app.add_option("--scenario", opts.scenario, "scenario name")->capture_default_str();
  app.add_option("--out", out, "output root directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "clustering seed (overrides dataset)");
  app.add_flag("--dump-mps", opts.dump_mps, "write every window LP as MPS");

  auto* validate = app.add_subcommand("validate", "check dataset consistency");
  int periods = 6, steps = 6;
  auto* aggregate = app.add_subcommand("aggregate", "cluster hourly profiles into typical periods");
  aggregate->add_option("--periods,-n", periods, "number of typical periods")->capture_default_str();
  aggregate->add_option("--steps,-k", steps, "hours per typical period")->capture_default_str();
  auto* pathway = app.add_subcommand("pathway", "solve the rolling-horizon pathway");
  auto* analyze = app.add_subcommand("analyze", "cost-avoided, merit-order and load-duration reports");
  std::string result;
  int year = 0, step = -1;
  analyze->add_option("--result", result, "pathway result.json (default: <out>/<scenario>/pathway)");
  analyze->add_option("--year", year, "investment year")->required();
  analyze->add_option("--step", step, "single typical step index");
  auto* exp = app.add_subcommand("export-mps", "write a window LP as fixed MPS");
  int exp_year = 0;
  std::string solution;
  auto* exp_year_opt = exp->add_option("--year", exp_year, "window start year");
  exp->add_option("--solution", solution, "external solution CSV (name,value) to cross-check");

  for (auto* sub : {validate, aggregate, pathway, analyze, exp}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : pathforge::kExitValidation;
  }

  opts.dataset = dataset;
  opts.out = out;
  if (seed_opt->count()) opts.seed = seed;
  if (dataset.empty() && !analyze->parsed()) {
    std::cerr << "error: --dataset is required\n";
    return pathforge::kExitValidation;
  }

  if (validate->parsed()) return pathforge::cmd_validate(opts);
  if (aggregate->parsed()) return pathforge::cmd_aggregate(opts, periods, steps);
  if (pathway->parsed()) return pathforge::cmd_pathway(opts);
  if (analyze->parsed()) {
    const std::filesystem::path rp =
        result.empty() ? opts.out / opts.scenario / "pathway" / "result.json" : std::filesystem::path(result);
    return pathforge::cmd_analyze(opts, rp, year, step >= 0 ? std::optional<int>(step) : std::nullopt);
  }
  if (exp->parsed()) {
    return pathforge::cmd_export_mps(
        opts, exp_year_opt->count() ? std::optional<int>(exp_year) : std::nullopt,
        solution.empty() ? std::nullopt : std::optional<std::filesystem::path>(solution));
  }
  return pathforge::kExitFailure;
}
