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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumpmc/diagnostics.hpp"

namespace jumpmc {

/// Scenario files are flat, line-oriented key/value text with [section]
/// headers and '#' comment lines. See README for the full key reference.
enum class RunMode { limit_study, tv_curve, estimate, exact_start };

std::string to_string(RunMode mode);

/// Parse failure with source position; maps to CLI exit code 2.
class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column)
      : Error(std::move(message)), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Static-validation failure; maps to CLI exit code 3.
class ValidationError : public Error {
 public:
  using Error::Error;
};

struct Scenario {
  std::string name;  // output-file stem

  std::optional<RunMode> mode;
  std::uint64_t seed = 0;
  long replicates = 1;
  int workers = 1;
  std::vector<double> times;

  std::string target_expr;
  std::string trial_expr;

  std::string scheme;  // is | sz | gasemyr | exp | mh | reweight-chain | reweight-mh
  double kappa = 1.0;
  bool gasemyr_optimal_choice = true;
  std::string proposal_expr;    // mh / reweight-mh
  std::string transition_expr;  // reweight-chain
  std::optional<double> initial_state;
  std::string start = "cold";  // cold | stationary

  std::string sojourn_law;  // exact-start: geometric | exponential

  // [tv]
  int bins = 60;
  std::optional<double> range_lo;
  std::optional<double> range_hi;
  std::string bound;  // none | doeblin | mh-independence | sz | gasemyr
  double beta = 1.0;
  std::optional<double> w_star;

  // [estimate]
  std::optional<long> estimate_n;      // points-based weighted mean
  std::optional<double> horizon;       // time-average over a fixed horizon
  std::string h_expr = "id";           // id | indicator(k) | power(p)
};

Scenario parse_scenario_text(const std::string& text, const std::string& name);
Scenario parse_scenario_file(const std::string& path);

struct ValidationReport {
  std::vector<std::string> issues;  // fatal
  std::vector<std::string> notes;   // informational
  bool ok() const { return issues.empty(); }
  nlohmann::json to_json() const;
};

/// Full static validation without sampling. Fatal problems land in
/// `issues`; regime remarks (for example a kappa that puts the sampler in
/// the exact-sampling regime) land in `notes`.
ValidationReport validate_scenario(const Scenario& scenario);

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  std::optional<int> workers_override;
  bool write_files = true;
  /// limit-study / tv-curve: additionally dump the first n replicate
  /// trajectories as CSV (index, state, weight, epoch_start).
  int dump_paths = 0;
};

struct RunArtifacts {
  std::vector<std::string> files_written;
  TvReport tv;             // limit-study and tv-curve modes
  nlohmann::json summary;  // always
};

/// Execute a validated scenario. Parse/validation problems throw
/// ParseError/ValidationError; sampler failures at run time throw Error.
RunArtifacts run_scenario(const Scenario& scenario, const RunOptions& options);

}  // namespace jumpmc
