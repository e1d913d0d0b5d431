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

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "jumpmc/equilibrium.hpp"
#include "jumpmc/numeric.hpp"
#include "jumpmc/scenario.hpp"
#include "jumpmc/scenario_detail.hpp"

namespace jumpmc {

namespace detail {

namespace {

// --- tiny recursive-descent parser for density/proposal expressions -------

struct ExprParser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(msg + " at offset " + std::to_string(pos) + " in '" + text + "'");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '-' ||
            text[pos] == '_')) {
      ++pos;
    }
    if (pos == start) fail("expected a name");
    return text.substr(start, pos - start);
  }

  double number() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
            text[pos] == '-' || text[pos] == '+' || text[pos] == 'e' || text[pos] == 'E')) {
      ++pos;
    }
    if (pos == start) fail("expected a number");
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text.substr(start, pos - start), &used);
      if (used != pos - start) fail("bad number");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail("bad number");
    }
    skip_ws();
    if (pos < text.size() && text[pos] == '/') {  // fraction form a/b
      ++pos;
      const double den = number();
      if (den == 0.0) fail("division by zero");
      return value / den;
    }
    return value;
  }

  Density density() {
    const std::string name = ident();
    if (name == "normal") {
      expect('(');
      const double mu = number();
      expect(',');
      const double sigma = number();
      expect(')');
      return normal_density(mu, sigma);
    }
    if (name == "cauchy") {
      expect('(');
      const double x0 = number();
      expect(',');
      const double gamma = number();
      expect(')');
      return cauchy_density(x0, gamma);
    }
    if (name == "mixture") {
      expect('(');
      std::vector<double> weights;
      std::vector<Density> comps;
      while (true) {
        weights.push_back(number());
        expect(':');
        comps.push_back(density());
        if (peek(',')) {
          expect(',');
          continue;
        }
        break;
      }
      expect(')');
      return mixture_density(std::move(weights), std::move(comps));
    }
    if (name == "discrete") {
      expect('(');
      expect('[');
      std::vector<double> pmf;
      while (true) {
        pmf.push_back(number());
        if (peek(',')) {
          expect(',');
          continue;
        }
        break;
      }
      expect(']');
      expect(')');
      return discrete_density(std::move(pmf));
    }
    fail("unknown density '" + name + "'");
  }

  void end() {
    skip_ws();
    if (pos != text.size()) fail("trailing input");
  }
};

std::vector<std::vector<double>> uniform_proposal_matrix(int k) {
  return std::vector<std::vector<double>>(
      static_cast<std::size_t>(k),
      std::vector<double>(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k)));
}

std::vector<double> pmf_of(const Density& d) {
  std::vector<double> pmf(static_cast<std::size_t>(d.support().n_atoms));
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    pmf[i] = std::exp(d.log_normalized(static_cast<double>(i)));
  }
  return pmf;
}

}  // namespace

Density build_density(const std::string& expr) {
  ExprParser p{expr};
  Density d = p.density();
  p.end();
  return d;
}

TransitionDensity build_proposal(const std::string& expr, const Density& target) {
  ExprParser p{expr};
  const std::string name = p.ident();
  if (name == "rw-normal") {
    p.expect('(');
    const double sigma = p.number();
    p.expect(')');
    p.end();
    return random_walk_normal_proposal(sigma);
  }
  if (name == "independent") {
    p.expect('(');
    Density d = p.density();
    p.expect(')');
    p.end();
    return independence_proposal(std::move(d));
  }
  if (name == "uniform-discrete") {
    p.end();
    if (!target.support().is_discrete()) {
      throw ConfigError("uniform-discrete proposal needs a discrete target");
    }
    return discrete_kernel(uniform_proposal_matrix(target.support().n_atoms));
  }
  throw ConfigError("unknown proposal '" + name + "'");
}

TransitionDensity build_transition(const std::string& expr, const Density& target) {
  ExprParser p{expr};
  const std::string name = p.ident();
  if (name == "mh-kernel") {
    p.end();
    if (!target.support().is_discrete()) {
      throw ConfigError("mh-kernel transition needs a discrete target");
    }
    const std::vector<double> pmf = pmf_of(target);
    return discrete_kernel(
        mh_kernel_discrete(pmf, uniform_proposal_matrix(target.support().n_atoms)));
  }
  if (name == "independent") {
    p.expect('(');
    Density d = p.density();
    p.expect(')');
    p.end();
    if (!d.has_sampler()) throw ConfigError("independent transition needs a samplable density");
    return independence_proposal(std::move(d));
  }
  throw ConfigError("unknown transition '" + name + "'");
}

StateFunction build_state_function(const std::string& expr) {
  ExprParser p{expr};
  const std::string name = p.ident();
  if (name == "id") {
    p.end();
    return [](double x) { return x; };
  }
  if (name == "indicator") {
    p.expect('(');
    const double k = p.number();
    p.expect(')');
    p.end();
    return [k](double x) { return x == k ? 1.0 : 0.0; };
  }
  if (name == "power") {
    p.expect('(');
    const double e = p.number();
    p.expect(')');
    p.end();
    return [e](double x) { return std::pow(x, e); };
  }
  throw ConfigError("unknown h function '" + name + "'");
}

double resolved_w_star(const Scenario& sc, const Density& target,
                       const std::optional<Density>& trial) {
  if (sc.w_star) return *sc.w_star;
  if (!trial) throw ConfigError("w-star must be declared when no trial density is configured");
  const WeightFunction wf(target, *trial, 1.0);
  if (target.support().is_discrete()) {
    double best = 0.0;
    for (int i = 0; i < target.support().n_atoms; ++i) {
      best = std::max(best, wf.weight(static_cast<double>(i)));
    }
    return best;
  }
  const double lo = sc.range_lo.value_or(-60.0);
  const double hi = sc.range_hi.value_or(80.0);
  return sup_weight_grid(wf, lo, hi, (hi - lo) / 20000.0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Execution

namespace {

using detail::build_density;
using detail::build_proposal;
using detail::build_state_function;
using detail::build_transition;

struct Built {
  Density target;
  std::optional<Density> trial;
  RunMode mode;
  std::uint64_t seed;
  int workers;
};

TimeMode scheme_time_mode(const std::string& scheme) {
  if (scheme == "sz" || scheme == "gasemyr" || scheme == "mh") return TimeMode::discrete;
  return TimeMode::continuous;
}

/// Sojourn law of the scheme's emitted weights, as a function of the emitted
/// state. Only defined for the per-state schemes.
SojournLaw scheme_sojourn_law(const Scenario& sc, const WeightFunction& wf) {
  if (sc.scheme == "is") {
    return SojournLaw::deterministic([wf](double x) { return wf.clamped_weight(x); });
  }
  if (sc.scheme == "exp") {
    return SojournLaw::exponential([wf](double x) { return wf.clamped_weight(x); });
  }
  if (sc.scheme == "sz") {
    return SojournLaw::geometric([wf](double x) { return 1.0 / (1.0 + wf.weight(x)); });
  }
  if (sc.scheme == "gasemyr") {
    return SojournLaw::geometric(
        [wf](double x) { return std::min(1.0, 1.0 / wf.weight(x)); });
  }
  throw ConfigError("scheme '" + sc.scheme + "' has no per-state sojourn law");
}

double pick_initial(const Scenario& sc, const Density& target, SplitRng& rng) {
  if (sc.initial_state) return *sc.initial_state;
  return target.sample(rng);
}

ReplicateSpec make_replicate_spec(const Scenario& sc, const Built& built) {
  ReplicateSpec spec;
  spec.mode = scheme_time_mode(sc.scheme);
  const Density target = built.target;

  if (sc.scheme == "is" || sc.scheme == "exp" || sc.scheme == "sz" || sc.scheme == "gasemyr") {
    const Density trial = *built.trial;
    const WeightFunction wf(target, trial, sc.kappa);
    const std::string scheme = sc.scheme;
    const bool optimal = sc.gasemyr_optimal_choice;
    spec.make_stream = [scheme, trial, wf, optimal](SplitRng& rng) -> StreamPtr {
      if (scheme == "is") return standard_is(trial, wf);
      if (scheme == "exp") return exponential_weight_sampler(trial, wf);
      if (scheme == "sz") return sz_sampler(trial, wf);
      if (!optimal) throw ConfigError("gasemyr: only the optimal (q,a) choice is file-configurable");
      return gasemyr_optimal(trial, wf, rng);
    };
    if (sc.start == "stationary") {
      const SojournLaw law = scheme_sojourn_law(sc, wf);
      spec.make_initial = [target, law](SplitRng& rng) -> std::optional<WeightedPoint> {
        const EquilibriumStart s = stationary_start(target, law, rng);
        return WeightedPoint{s.initial_state, s.initial_weight};
      };
    }
    return spec;
  }

  if (sc.scheme == "mh") {
    const TransitionDensity proposal = build_proposal(sc.proposal_expr, target);
    const Scenario sc_copy = sc;
    spec.make_stream = [sc_copy, target, proposal](SplitRng& rng) -> StreamPtr {
      return mh_sampler(target, proposal, pick_initial(sc_copy, target, rng));
    };
    return spec;
  }

  if (sc.scheme == "reweight-chain") {
    const TransitionDensity transition = build_transition(sc.transition_expr, target);
    const Scenario sc_copy = sc;
    spec.make_stream = [sc_copy, target, transition](SplitRng& rng) -> StreamPtr {
      return reweight_chain_sampler(transition, target, pick_initial(sc_copy, target, rng));
    };
    return spec;
  }

  if (sc.scheme == "reweight-mh") {
    const TransitionDensity proposal = build_proposal(sc.proposal_expr, target);
    const Scenario sc_copy = sc;
    spec.make_stream = [sc_copy, target, proposal](SplitRng& rng) -> StreamPtr {
      return reweight_mh_sampler(target, proposal, pick_initial(sc_copy, target, rng));
    };
    return spec;
  }

  throw ConfigError("unknown scheme '" + sc.scheme + "'");
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

// Summaries carry basenames so identical runs into different directories
// produce identical bytes.
std::vector<std::string> basenames(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  out.reserve(paths.size());
  for (const std::string& p : paths) out.push_back(std::filesystem::path(p).filename().string());
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write output file '" + path + "'");
  return out;
}

void write_histogram_csv(std::ostream& out, const BinSpec& bins,
                         std::span<const long> counts, std::span<const double> ref_probs) {
  out << "bin_left,bin_right,count,reference_prob\n";
  const double width = (bins.hi - bins.lo) / bins.count;
  // Overflow cells first and last.
  out << "-inf," << format_shortest(bins.lo) << "," << counts.front() << ","
      << format_shortest(ref_probs.front()) << "\n";
  for (int i = 0; i < bins.count; ++i) {
    out << format_shortest(bins.lo + i * width) << "," << format_shortest(bins.lo + (i + 1) * width)
        << "," << counts[static_cast<std::size_t>(i) + 1] << ","
        << format_shortest(ref_probs[static_cast<std::size_t>(i) + 1]) << "\n";
  }
  out << format_shortest(bins.hi) << ",inf," << counts.back() << ","
      << format_shortest(ref_probs.back()) << "\n";
}

void write_histogram_csv_discrete(std::ostream& out, std::span<const long> counts,
                                  std::span<const double> pmf) {
  out << "bin_left,bin_right,count,reference_prob\n";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out << i << "," << i << "," << counts[i] << "," << format_shortest(pmf[i]) << "\n";
  }
}

RunArtifacts run_limit_or_tv(const Scenario& sc, const Built& built, const RunOptions& opt) {
  RunArtifacts artifacts;
  const ReplicateSpec spec = make_replicate_spec(sc, built);
  const std::vector<std::vector<double>> states =
      run_replicates(spec, sc.times, sc.replicates, built.seed, built.workers);

  const SplitRng root(built.seed);
  const bool discrete = built.target.support().is_discrete();

  std::vector<double> ref_pmf;
  BinSpec bins;
  std::vector<double> bin_probs;
  if (discrete) {
    ref_pmf.resize(static_cast<std::size_t>(built.target.support().n_atoms));
    for (std::size_t i = 0; i < ref_pmf.size(); ++i) {
      ref_pmf[i] = std::exp(built.target.log_normalized(static_cast<double>(i)));
    }
    artifacts.tv.bins = "atoms[" + std::to_string(ref_pmf.size()) + "]";
  } else {
    if (sc.range_lo && sc.range_hi) {
      bins = BinSpec{*sc.range_lo, *sc.range_hi, sc.bins};
    } else {
      bins = default_bin_spec(built.target, sc.bins);
    }
    bin_probs = reference_bin_probs(built.target, bins);
    artifacts.tv.bins = std::to_string(sc.bins) + " cells on [" + format_shortest(bins.lo) + "," +
                        format_shortest(bins.hi) + "] plus overflow";
  }

  artifacts.tv.times.assign(sc.times.begin(), sc.times.end());
  artifacts.tv.replicates = sc.replicates;
  for (std::size_t k = 0; k < sc.times.size(); ++k) {
    SplitRng boot_rng = root.split(0x100000000ULL + k);
    TvEstimate est;
    if (discrete) {
      est = estimate_tv(states[k], ref_pmf, boot_rng);
    } else {
      est = estimate_tv(states[k], built.target, bins, boot_rng);
    }
    artifacts.tv.tv.push_back(est.tv);
    artifacts.tv.mc_error.push_back(est.mc_error);
  }

  if (!sc.bound.empty() && sc.bound != "none") {
    BoundParams params;
    params.beta = sc.beta;
    params.kappa = sc.kappa;
    params.w_star = detail::resolved_w_star(sc, built.target, built.trial);
    BoundKind kind = BoundKind::doeblin;
    if (sc.bound == "mh-independence") kind = BoundKind::mh_independence;
    if (sc.bound == "sz") kind = BoundKind::sz;
    if (sc.bound == "gasemyr") kind = BoundKind::gasemyr;
    artifacts.tv.bound = bound_curve(kind, params, sc.times);
  }

  // Outputs.
  if (opt.write_files) {
    std::filesystem::create_directories(opt.out_dir);
    const std::string tv_path = join_path(opt.out_dir, sc.name + "_tv.csv");
    auto tv_out = open_out(tv_path);
    artifacts.tv.write_csv(tv_out);
    artifacts.files_written.push_back(tv_path);

    // Optional trajectory dumps: replay the first replicates with their run
    // seeds, so the dumped paths are the ones behind the grid records.
    const long n_paths = std::min<long>(opt.dump_paths, sc.replicates);
    for (long r = 0; r < n_paths; ++r) {
      SplitRng replicate_rng = root.split(static_cast<std::uint64_t>(r));
      SplitRng init_rng = replicate_rng.split(0);
      SplitRng stream_rng = replicate_rng.split(1);
      StreamPtr stream = spec.make_stream(init_rng);
      JumpPath path = JumpPath::build({}, spec.mode);
      if (spec.make_initial) {
        if (auto first = spec.make_initial(init_rng)) path.append(*first);
      }
      extend_path_past(path, *stream, stream_rng, sc.times.back());
      const std::string path_file =
          join_path(opt.out_dir, sc.name + "_path_r" + std::to_string(r) + ".csv");
      auto path_out = open_out(path_file);
      write_path_csv(path, path_out);
      artifacts.files_written.push_back(path_file);
    }

    if (sc.mode == RunMode::limit_study) {
      for (std::size_t k = 0; k < sc.times.size(); ++k) {
        const std::string hist_path =
            join_path(opt.out_dir, sc.name + "_hist_t" + format_shortest(sc.times[k]) + ".csv");
        auto hist_out = open_out(hist_path);
        if (discrete) {
          std::vector<long> counts(ref_pmf.size(), 0);
          for (double x : states[k]) ++counts[static_cast<std::size_t>(std::llround(x))];
          write_histogram_csv_discrete(hist_out, counts, ref_pmf);
        } else {
          const std::vector<long> counts = bin_counts(states[k], bins);
          write_histogram_csv(hist_out, bins, counts, bin_probs);
        }
        artifacts.files_written.push_back(hist_path);
      }
    }
  }

  artifacts.summary = nlohmann::json{
      {"mode", to_string(*sc.mode)},
      {"scheme", sc.scheme},
      {"kappa", sc.kappa},
      {"seed", built.seed},
      {"replicates", sc.replicates},
      {"times", artifacts.tv.times},
      {"tv", artifacts.tv.tv},
      {"mc_error", artifacts.tv.mc_error},
      {"bins", artifacts.tv.bins},
      {"files", basenames(artifacts.files_written)},
  };
  if (!artifacts.tv.bound.empty()) artifacts.summary["bound"] = artifacts.tv.bound;

  if (opt.write_files) {
    const std::string summary_path = join_path(opt.out_dir, sc.name + "_summary.json");
    auto out = open_out(summary_path);
    out << artifacts.summary.dump(2) << "\n";
    artifacts.files_written.push_back(summary_path);
    artifacts.summary["files"] = basenames(artifacts.files_written);
  }
  return artifacts;
}

RunArtifacts run_estimate(const Scenario& sc, const Built& built, const RunOptions& opt) {
  RunArtifacts artifacts;
  const ReplicateSpec spec = make_replicate_spec(sc, built);
  const StateFunction h = build_state_function(sc.h_expr);
  const SplitRng root(built.seed);

  std::vector<double> estimates;
  std::vector<double> ess_values;
  estimates.reserve(static_cast<std::size_t>(sc.replicates));

  for (long r = 0; r < sc.replicates; ++r) {
    SplitRng replicate_rng = root.split(static_cast<std::uint64_t>(r));
    SplitRng init_rng = replicate_rng.split(0);
    SplitRng stream_rng = replicate_rng.split(1);
    StreamPtr stream = spec.make_stream(init_rng);

    if (sc.estimate_n) {
      std::vector<WeightedPoint> points;
      points.reserve(static_cast<std::size_t>(*sc.estimate_n));
      for (long i = 0; i < *sc.estimate_n; ++i) points.push_back(stream->next(stream_rng));
      estimates.push_back(weighted_mean(points, h).value);
      ess_values.push_back(effective_sample_size(points));
    } else {
      JumpPath path = JumpPath::build({}, spec.mode);
      if (spec.make_initial) {
        if (auto first = spec.make_initial(init_rng)) path.append(*first);
      }
      extend_path_past(path, *stream, stream_rng, *sc.horizon);
      estimates.push_back(time_average(path, h, *sc.horizon).value);
      ess_values.push_back(effective_sample_size(path.points()));
    }
  }

  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= static_cast<double>(estimates.size());
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  const double se = estimates.size() > 1
                        ? std::sqrt(var / (static_cast<double>(estimates.size()) - 1.0) /
                                    static_cast<double>(estimates.size()))
                        : 0.0;
  double mean_ess = 0.0;
  for (double e : ess_values) mean_ess += e;
  mean_ess /= static_cast<double>(ess_values.size());

  artifacts.summary = nlohmann::json{
      {"scheme", sc.scheme},
      {"n_or_t", sc.estimate_n ? static_cast<double>(*sc.estimate_n) : *sc.horizon},
      {"estimate", mean},
      {"replicate_se", se},
      {"ess", mean_ess},
      {"replicates", sc.replicates},
      {"seed", built.seed},
      {"h", sc.h_expr},
  };
  if (opt.write_files) {
    std::filesystem::create_directories(opt.out_dir);
    const std::string path = join_path(opt.out_dir, sc.name + "_estimate.json");
    auto out = open_out(path);
    out << artifacts.summary.dump(2) << "\n";
    artifacts.files_written.push_back(path);
    artifacts.summary["files"] = basenames(artifacts.files_written);
  }
  return artifacts;
}

RunArtifacts run_exact_start(const Scenario& sc, const Built& built, const RunOptions& opt) {
  RunArtifacts artifacts;
  const Density target = built.target;
  const Density trial = *built.trial;
  const WeightFunction wf(target, trial, sc.kappa);

  SojournLaw law = sc.sojourn_law == "geometric"
                       ? SojournLaw::geometric([wf](double x) {
                           const double kw = wf.weight(x);
                           if (kw < 1.0) {
                             throw ConfigError("exact-start: kappa*w(x) < 1 breaks the geometric law");
                           }
                           return 1.0 / kw;
                         })
                       : SojournLaw::exponential([wf](double x) { return wf.clamped_weight(x); });

  HazardFloor floor;
  if (target.support().is_discrete()) {
    std::vector<double> atoms(static_cast<std::size_t>(target.support().n_atoms));
    for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i] = static_cast<double>(i);
    floor = hazard_floor(law, atoms);
  } else {
    // Continuous: the exponential hazard is 1/(kappa*w), floored by the
    // declared supremum of w.
    floor.epsilon_star = 1.0 / (sc.kappa * *sc.w_star);
    floor.closed_form = true;
    floor.note = "exponential hazard floored by declared w-star";
  }

  auto joint = [trial, law](SplitRng& rng) -> WeightedPoint {
    const double x = trial.sample(rng);
    return {x, law.sample(x, rng)};
  };

  const SplitRng root(built.seed);
  nlohmann::json lines = nlohmann::json::array();
  double mean_tau = 0.0;
  double mean_trials = 0.0;
  for (long r = 0; r < sc.replicates; ++r) {
    SplitRng rng = root.split(static_cast<std::uint64_t>(r));
    const ExactStartResult result = exact_start(joint, law, floor, rng);
    mean_tau += result.start.tau;
    mean_trials += static_cast<double>(result.start.trials_used);
    lines.push_back(nlohmann::json{{"tau", result.start.tau},
                                   {"trials_used", result.start.trials_used},
                                   {"initial_state", result.start.initial_state},
                                   {"initial_weight", result.start.initial_weight}});
  }
  mean_tau /= static_cast<double>(sc.replicates);
  mean_trials /= static_cast<double>(sc.replicates);

  artifacts.summary = nlohmann::json{
      {"mode", "exact-start"},
      {"law", sc.sojourn_law},
      {"kappa", sc.kappa},
      {"epsilon_star", floor.epsilon_star},
      {"kappa_epsilon", sc.kappa * floor.epsilon_star},
      {"replicates", sc.replicates},
      {"mean_tau", mean_tau},
      {"mean_trials", mean_trials},
      {"seed", built.seed},
  };

  if (opt.write_files) {
    std::filesystem::create_directories(opt.out_dir);
    const std::string jsonl_path = join_path(opt.out_dir, sc.name + "_starts.jsonl");
    auto out = open_out(jsonl_path);
    for (const auto& line : lines) out << line.dump() << "\n";
    artifacts.files_written.push_back(jsonl_path);
    const std::string summary_path = join_path(opt.out_dir, sc.name + "_summary.json");
    auto sum_out = open_out(summary_path);
    sum_out << artifacts.summary.dump(2) << "\n";
    artifacts.files_written.push_back(summary_path);
    artifacts.summary["files"] = basenames(artifacts.files_written);
  }
  return artifacts;
}

}  // namespace

RunArtifacts run_scenario(const Scenario& sc, const RunOptions& options) {
  const ValidationReport report = validate_scenario(sc);
  if (!report.ok()) {
    std::string msg = "scenario validation failed:";
    for (const std::string& s : report.issues) msg += "\n  - " + s;
    throw ValidationError(msg);
  }

  Built built{build_density(sc.target_expr),
              sc.trial_expr.empty() ? std::optional<Density>() : build_density(sc.trial_expr),
              *sc.mode,
              options.seed_override.value_or(sc.seed),
              options.workers_override.value_or(sc.workers)};

  switch (*sc.mode) {
    case RunMode::limit_study:
    case RunMode::tv_curve:
      return run_limit_or_tv(sc, built, options);
    case RunMode::estimate:
      return run_estimate(sc, built, options);
    case RunMode::exact_start:
      return run_exact_start(sc, built, options);
  }
  throw Error("unreachable");
}

}  // namespace jumpmc
