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

#include "jumpmc/scenario.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jumpmc/scenario_detail.hpp"

namespace jumpmc {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::limit_study: return "limit-study";
    case RunMode::tv_curve: return "tv-curve";
    case RunMode::estimate: return "estimate";
    case RunMode::exact_start: return "exact-start";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// Numbers in scenario files are decimals with an optional a/b fraction form
/// (so thirds can be written exactly).
double parse_number(const std::string& text, int line, int column) {
  const std::string t = trim(text);
  const std::size_t slash = t.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(t.substr(0, slash), &used);
      if (trim(t.substr(0, slash)).size() != used) throw std::invalid_argument(t);
      const double den = std::stod(t.substr(slash + 1), &used);
      if (den == 0.0) throw ParseError("division by zero in '" + t + "'", line, column);
      return num / den;
    }
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + t + "'", line, column);
  }
}

std::vector<double> parse_number_list(const std::string& text, int line, int column) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_number(item, line, column));
  }
  if (out.empty()) throw ParseError("empty list", line, column);
  return out;
}

bool parse_bool(const std::string& text, int line, int column) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ParseError("not a boolean: '" + t + "'", line, column);
}

long parse_long(const std::string& text, int line, int column) {
  const double v = parse_number(text, line, column);
  if (std::floor(v) != v) throw ParseError("not an integer: '" + trim(text) + "'", line, column);
  return static_cast<long>(v);
}

RunMode parse_mode(const std::string& text, int line, int column) {
  const std::string t = trim(text);
  if (t == "limit-study") return RunMode::limit_study;
  if (t == "tv-curve") return RunMode::tv_curve;
  if (t == "estimate") return RunMode::estimate;
  if (t == "exact-start") return RunMode::exact_start;
  throw ParseError("unknown mode '" + t + "'", line, column);
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& name) {
  Scenario sc;
  sc.name = name;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  std::vector<std::string> seen_keys;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, 1);
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"scenario", "target", "trial", "scheme",
                                    "sojourn",  "tv",     "estimate"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw ParseError("unknown section [" + section + "]", line_no, 1);
      continue;
    }

    const std::size_t eq = raw.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line_no, 1);
    }
    const int value_col = static_cast<int>(eq) + 2;
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no, 1);
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line_no, value_col);
    if (section.empty()) throw ParseError("key outside any [section]", line_no, 1);

    const std::string qualified = section + "." + key;
    for (const std::string& k : seen_keys) {
      if (k == qualified) throw ParseError("duplicate key '" + qualified + "'", line_no, 1);
    }
    seen_keys.push_back(qualified);

    if (section == "scenario") {
      if (key == "mode") {
        sc.mode = parse_mode(value, line_no, value_col);
      } else if (key == "seed") {
        const long s = parse_long(value, line_no, value_col);
        if (s < 0) throw ParseError("seed must be nonnegative", line_no, value_col);
        sc.seed = static_cast<std::uint64_t>(s);
      } else if (key == "replicates") {
        sc.replicates = parse_long(value, line_no, value_col);
      } else if (key == "workers") {
        sc.workers = static_cast<int>(parse_long(value, line_no, value_col));
      } else if (key == "times") {
        sc.times = parse_number_list(value, line_no, value_col);
      } else {
        throw ParseError("unknown key '" + qualified + "'", line_no, 1);
      }
    } else if (section == "target") {
      if (key == "density") {
        sc.target_expr = value;
      } else {
        throw ParseError("unknown key '" + qualified + "'", line_no, 1);
      }
    } else if (section == "trial") {
      if (key == "density") {
        sc.trial_expr = value;
      } else {
        throw ParseError("unknown key '" + qualified + "'", line_no, 1);
      }
    } else if (section == "scheme") {
      if (key == "name") {
        sc.scheme = value;
      } else if (key == "kappa") {
        sc.kappa = parse_number(value, line_no, value_col);
      } else if (key == "optimal") {
        sc.gasemyr_optimal_choice = parse_bool(value, line_no, value_col);
      } else if (key == "proposal") {
        sc.proposal_expr = value;
      } else if (key == "transition") {
        sc.transition_expr = value;
      } else if (key == "initial") {
        sc.initial_state = parse_number(value, line_no, value_col);
      } else if (key == "start") {
        if (value != "cold" && value != "stationary") {
          throw ParseError("start must be 'cold' or 'stationary'", line_no, value_col);
        }
        sc.start = value;
      } else {
        throw ParseError("unknown key '" + qualified + "'", line_no, 1);
      }
    } else if (section == "sojourn") {
      if (key == "law") {
        sc.sojourn_law = value;
      } else {
        throw ParseError("unknown key '" + qualified + "'", line_no, 1);
      }
    } else if (section == "tv") {
      if (key == "bins") {
        sc.bins = static_cast<int>(parse_long(value, line_no, value_col));
      } else if (key == "range") {
        const std::vector<double> r = parse_number_list(value, line_no, value_col);
        if (r.size() != 2) throw ParseError("range needs exactly two numbers", line_no, value_col);
        sc.range_lo = r[0];
        sc.range_hi = r[1];
      } else if (key == "bound") {
        sc.bound = value;
      } else if (key == "beta") {
        sc.beta = parse_number(value, line_no, value_col);
      } else if (key == "w-star") {
        sc.w_star = parse_number(value, line_no, value_col);
      } else {
        throw ParseError("unknown key '" + qualified + "'", line_no, 1);
      }
    } else if (section == "estimate") {
      if (key == "n") {
        sc.estimate_n = parse_long(value, line_no, value_col);
      } else if (key == "horizon") {
        sc.horizon = parse_number(value, line_no, value_col);
      } else if (key == "h") {
        sc.h_expr = value;
      } else {
        throw ParseError("unknown key '" + qualified + "'", line_no, 1);
      }
    }
  }
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'", 0, 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), std::filesystem::path(path).stem().string());
}

nlohmann::json ValidationReport::to_json() const {
  return nlohmann::json{{"issues", issues}, {"notes", notes}, {"ok", ok()}};
}

ValidationReport validate_scenario(const Scenario& sc) {
  ValidationReport report;
  auto issue = [&report](const std::string& msg) { report.issues.push_back(msg); };

  if (!sc.mode) issue("scenario.mode is required");
  if (sc.replicates < 1) issue("scenario.replicates must be >= 1");
  if (sc.workers < 1) issue("scenario.workers must be >= 1");

  // Distributions must resolve.
  std::optional<Density> target;
  std::optional<Density> trial;
  if (sc.target_expr.empty()) {
    issue("target.density is required");
  } else {
    try {
      target = detail::build_density(sc.target_expr);
    } catch (const std::exception& e) {
      issue(std::string("target.density: ") + e.what());
    }
  }
  if (sc.trial_expr.empty()) {
    if (!sc.scheme.empty() && sc.scheme != "mh" && sc.scheme != "reweight-mh" &&
        sc.scheme != "reweight-chain") {
      issue("trial.density is required for scheme '" + sc.scheme + "'");
    }
    if (sc.mode == RunMode::exact_start) issue("trial.density is required for exact-start");
  } else {
    try {
      trial = detail::build_density(sc.trial_expr);
    } catch (const std::exception& e) {
      issue(std::string("trial.density: ") + e.what());
    }
  }
  if (target && trial &&
      target->support().is_discrete() != trial->support().is_discrete()) {
    issue("target and trial must live on the same kind of support");
  }
  if (target && trial && target->support().is_discrete() &&
      target->support().n_atoms != trial->support().n_atoms) {
    issue("target and trial disagree on the number of atoms");
  }

  if (!(sc.kappa > 0.0)) issue("scheme.kappa must be positive");

  // Times.
  const bool needs_times =
      sc.mode == RunMode::limit_study || sc.mode == RunMode::tv_curve;
  if (needs_times) {
    if (sc.times.empty()) issue("scenario.times is required for this mode");
    for (std::size_t i = 0; i < sc.times.size(); ++i) {
      if (sc.times[i] < 0.0) issue("times must be nonnegative");
      if (i > 0 && sc.times[i] <= sc.times[i - 1]) {
        issue("times must be strictly increasing");
        break;
      }
    }
  }

  // Scheme requirements.
  static const char* schemes[] = {"is", "sz", "gasemyr", "exp", "mh", "reweight-chain",
                                  "reweight-mh"};
  const bool needs_scheme = sc.mode != RunMode::exact_start;
  if (sc.scheme.empty()) {
    if (needs_scheme) issue("scheme.name is required");
  } else {
    bool known = false;
    for (const char* s : schemes) known = known || sc.scheme == s;
    if (!known) issue("unknown scheme '" + sc.scheme + "'");
  }
  if (sc.scheme == "mh" || sc.scheme == "reweight-mh") {
    if (sc.proposal_expr.empty()) {
      issue("scheme.proposal is required for '" + sc.scheme + "'");
    } else if (target) {
      try {
        detail::build_proposal(sc.proposal_expr, *target);
      } catch (const std::exception& e) {
        issue(std::string("scheme.proposal: ") + e.what());
      }
    }
    if (!sc.initial_state && !(target && target->has_sampler())) {
      issue("scheme.initial is required when the target has no exact sampler");
    }
    if (sc.initial_state && target && !target->in_support(*sc.initial_state)) {
      issue("scheme.initial lies outside the target support");
    }
  }
  if (sc.scheme == "reweight-chain") {
    if (sc.transition_expr.empty()) {
      issue("scheme.transition is required for reweight-chain");
    } else if (target) {
      try {
        detail::build_transition(sc.transition_expr, *target);
      } catch (const std::exception& e) {
        issue(std::string("scheme.transition: ") + e.what());
      }
    }
  }
  if (sc.scheme == "gasemyr" && !sc.gasemyr_optimal_choice) {
    issue("scheme.optimal = false: only the optimal (q,a) choice is file-configurable; "
          "custom pairs go through the library interface");
  }
  if (sc.start == "stationary") {
    if (sc.scheme == "mh" || sc.scheme == "reweight-chain" || sc.scheme == "reweight-mh") {
      issue("stationary start is not available for scheme '" + sc.scheme + "'");
    }
    if (target && !target->has_sampler()) {
      issue("stationary start needs a target with an exact sampler");
    }
  }

  // Discrete-time schemes evaluate only integer times.
  const bool discrete_time = sc.scheme == "sz" || sc.scheme == "gasemyr" || sc.scheme == "mh";
  if (needs_times && discrete_time) {
    for (double t : sc.times) {
      if (std::floor(t) != t) {
        issue("scheme '" + sc.scheme + "' runs in discrete time; times must be integers");
        break;
      }
    }
  }

  // TV options.
  if (needs_times) {
    if (sc.bins < 1) issue("tv.bins must be >= 1");
    if (sc.range_lo.has_value() != sc.range_hi.has_value()) issue("tv.range needs two numbers");
    if (sc.range_lo && sc.range_hi && !(*sc.range_lo < *sc.range_hi)) {
      issue("tv.range must be an increasing pair");
    }
    if (!sc.bound.empty() && sc.bound != "none") {
      static const char* bounds[] = {"doeblin", "mh-independence", "sz", "gasemyr"};
      bool known = false;
      for (const char* b : bounds) known = known || sc.bound == b;
      if (!known) issue("unknown bound '" + sc.bound + "'");
      if (sc.bound == "doeblin" && (!(sc.beta > 0.0) || sc.beta > 1.0)) {
        issue("tv.beta must lie in (0,1] for the doeblin bound");
      }
      if (!sc.w_star && !trial) {
        issue("bound curves need tv.w-star when no trial density is configured");
      }
      if (sc.bound == "gasemyr" && target && trial) {
        try {
          if (sc.kappa * detail::resolved_w_star(sc, *target, trial) <= 1.0) {
            issue("gasemyr bound needs kappa*w* > 1 (the chain is already exact below that)");
          }
        } catch (const std::exception&) {
          // w* not resolvable statically.
        }
      }
    }
  }

  // Estimate options.
  if (sc.mode == RunMode::estimate) {
    if (!sc.estimate_n && !sc.horizon) issue("estimate mode needs estimate.n or estimate.horizon");
    if (sc.estimate_n && sc.horizon) issue("estimate.n and estimate.horizon are exclusive");
    if (sc.estimate_n && *sc.estimate_n < 1) issue("estimate.n must be >= 1");
    if (sc.horizon && !(*sc.horizon > 0.0)) issue("estimate.horizon must be positive");
    try {
      detail::build_state_function(sc.h_expr);
    } catch (const std::exception& e) {
      issue(std::string("estimate.h: ") + e.what());
    }
  }

  // Exact-start options.
  if (sc.mode == RunMode::exact_start) {
    if (sc.sojourn_law != "geometric" && sc.sojourn_law != "exponential") {
      issue("sojourn.law must be 'geometric' or 'exponential' for exact-start");
    }
    if (target && trial && target->support().is_discrete() && sc.sojourn_law == "geometric") {
      // Success probabilities g/(kappa*target) must be valid.
      for (int i = 0; i < target->support().n_atoms; ++i) {
        const double x = static_cast<double>(i);
        const double kw = sc.kappa * std::exp(target->log_density(x) - trial->log_density(x));
        if (kw < 1.0) {
          issue("geometric sojourns need kappa*w(x) >= 1 at every atom (fails at atom " +
                std::to_string(i) + ")");
          break;
        }
      }
    }
    if (target && !target->support().is_discrete() && !sc.w_star) {
      issue("continuous exact-start needs tv.w-star to bound the hazard");
    }
  }

  // Regime notes.
  if (report.ok() && target && trial && sc.scheme == "gasemyr") {
    try {
      if (sc.kappa * detail::resolved_w_star(sc, *target, trial) <= 1.0) {
        report.notes.push_back(
            "kappa <= 1/w*: the sampler runs in the rejection-sampling regime and the chain "
            "is exact at every time");
      }
    } catch (const std::exception&) {
      // w* not resolvable statically; no note.
    }
  }
  if (sc.mode == RunMode::estimate && sc.estimate_n && sc.start == "stationary") {
    report.notes.push_back("start = stationary has no effect on the points-based estimate");
  }

  return report;
}

}  // namespace jumpmc
