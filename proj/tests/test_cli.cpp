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

// Process-level checks of the command line tool: exit codes and the
// machine-readable error objects.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(JUMPMC_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  CommandResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) result.output += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  return path.string();
}

const std::string kGood = R"([scenario]
mode = tv-curve
seed = 5
replicates = 1500
times = 1, 3

[target]
density = discrete([0.2, 0.3, 0.5])

[trial]
density = discrete([1/3, 1/3, 1/3])

[scheme]
name = is
kappa = 1
)";

}  // namespace

TEST_CASE("run succeeds on a valid scenario and writes the outputs") {
  const std::string file = write_temp("cli_good.scenario", kGood);
  const auto out_dir = std::filesystem::temp_directory_path() / "cli_good_out";
  const CommandResult r = run_cli("run " + file + " --out-dir " + out_dir.string());
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::exists(out_dir / "cli_good_tv.csv"));
  const nlohmann::json summary = nlohmann::json::parse(r.output);
  CHECK(summary["replicates"] == 1500);
}

TEST_CASE("malformed files exit 2 with line and column in the error object") {
  const std::string file = write_temp("cli_bad.scenario", "[scenario]\nmode circular\n");
  const CommandResult r = run_cli("run " + file);
  CHECK(r.exit_code == 2);
  const nlohmann::json err = nlohmann::json::parse(r.output);
  CHECK(err["error"]["kind"] == "parse");
  CHECK(err["error"]["line"] == 2);
  CHECK(err["error"].contains("column"));
}

TEST_CASE("validation problems exit 3") {
  std::string text = kGood;
  text.replace(text.find("times = 1, 3"), 12, "times = 3, 1");
  const std::string file = write_temp("cli_invalid.scenario", text);
  const CommandResult r = run_cli("run " + file);
  CHECK(r.exit_code == 3);
  const nlohmann::json err = nlohmann::json::parse(r.output);
  CHECK(err["error"]["kind"] == "validation");
}

TEST_CASE("validate reports an empty issue list for a good file") {
  const std::string file = write_temp("cli_ok.scenario", kGood);
  const CommandResult r = run_cli("validate " + file);
  CHECK(r.exit_code == 0);
  const nlohmann::json report = nlohmann::json::parse(r.output);
  CHECK(report["issues"].empty());
}

TEST_CASE("subcommand and declared mode must agree") {
  const std::string file = write_temp("cli_mode.scenario", kGood);
  const CommandResult r = run_cli("exact-start " + file);
  CHECK(r.exit_code == 3);
}

TEST_CASE("seed flag overrides the scenario seed") {
  const std::string file = write_temp("cli_seed.scenario", kGood);
  const CommandResult a = run_cli("tv-curve " + file + " --seed 42 --out-dir " +
                                  (std::filesystem::temp_directory_path() / "cli_s").string());
  CHECK(a.exit_code == 0);
  CHECK(nlohmann::json::parse(a.output)["seed"] == 42);
}
