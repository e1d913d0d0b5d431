// Copyright 2026 The jumpmc Authors
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

// Scenario-driven experiment harness. Exit codes: 0 success, 2 parse error,
// 3 validation error, 4 runtime sampler error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jumpmc/scenario.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRuntime = 4;

void print_error(const std::string& kind, const std::string& message, int line = 0,
                 int column = 0) {
  nlohmann::json err{{"error", {{"kind", kind}, {"message", message}}}};
  if (line > 0) {
    err["error"]["line"] = line;
    err["error"]["column"] = column;
  }
  std::cerr << err.dump(2) << "\n";
}

struct CommonArgs {
  std::string file;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  int dump_paths = 0;
};

int execute(const CommonArgs& args, std::optional<jumpmc::RunMode> forced_mode,
            bool validate_only) {
  jumpmc::Scenario scenario;
  try {
    scenario = jumpmc::parse_scenario_file(args.file);
  } catch (const jumpmc::ParseError& e) {
    print_error("parse", e.what(), e.line(), e.column());
    return kExitParse;
  }

  if (forced_mode) {
    if (scenario.mode && *scenario.mode != *forced_mode) {
      print_error("validation", "scenario declares mode '" + to_string(*scenario.mode) +
                                    "' but the subcommand requests '" +
                                    to_string(*forced_mode) + "'");
      return kExitValidation;
    }
    scenario.mode = forced_mode;
  }

  const jumpmc::ValidationReport report = jumpmc::validate_scenario(scenario);
  if (validate_only) {
    std::cout << report.to_json().dump(2) << "\n";
    if (!report.ok()) {
      print_error("validation", "scenario has " + std::to_string(report.issues.size()) +
                                    " validation issue(s)");
      return kExitValidation;
    }
    return 0;
  }
  if (!report.ok()) {
    nlohmann::json err{{"error",
                        {{"kind", "validation"},
                         {"message", "scenario validation failed"},
                         {"issues", report.issues}}}};
    std::cerr << err.dump(2) << "\n";
    return kExitValidation;
  }

  jumpmc::RunOptions options;
  options.out_dir = args.out_dir;
  options.seed_override = args.seed;
  options.workers_override = args.workers;
  options.dump_paths = args.dump_paths;

  try {
    const jumpmc::RunArtifacts artifacts = jumpmc::run_scenario(scenario, options);
    std::cout << artifacts.summary.dump(2) << "\n";
    return 0;
  } catch (const jumpmc::ValidationError& e) {
    print_error("validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jumpmc: weighted-sample jump process experiments"};
  app.require_subcommand(1);

  CommonArgs args;

  auto add_common = [&](CLI::App* cmd, bool with_run_flags) {
    cmd->add_option("file", args.file, "scenario file")->required();
    if (with_run_flags) {
      cmd->add_option("--out-dir", args.out_dir, "output directory (default '.')");
      cmd->add_option("--seed", args.seed, "override the scenario seed");
      cmd->add_option("--workers", args.workers, "worker threads for replicates");
      cmd->add_option("--dump-paths", args.dump_paths,
                      "also write the first N replicate trajectories as CSV");
    }
  };

  CLI::App* run = app.add_subcommand("run", "execute the scenario's declared mode");
  add_common(run, true);
  CLI::App* validate = app.add_subcommand("validate", "static checks, no sampling");
  add_common(validate, false);
  CLI::App* estimate = app.add_subcommand("estimate", "run in estimate mode");
  add_common(estimate, true);
  CLI::App* tv_curve = app.add_subcommand("tv-curve", "run in tv-curve mode");
  add_common(tv_curve, true);
  CLI::App* exact_start = app.add_subcommand("exact-start", "run in exact-start mode");
  add_common(exact_start, true);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return execute(args, std::nullopt, false);
  if (validate->parsed()) return execute(args, std::nullopt, true);
  if (estimate->parsed()) return execute(args, jumpmc::RunMode::estimate, false);
  if (tv_curve->parsed()) return execute(args, jumpmc::RunMode::tv_curve, false);
  if (exact_start->parsed()) return execute(args, jumpmc::RunMode::exact_start, false);
  return 1;
}
