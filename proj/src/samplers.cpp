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

#include "jumpmc/samplers.hpp"

#include <cmath>
#include <utility>

namespace jumpmc {

namespace {

constexpr int kMaxSkipDraws = 1 << 22;

[[noreturn]] void throw_degenerate_stream(const char* scheme) {
  throw ConfigError(std::string(scheme) +
                    ": no positive-weight draw produced; trial does not overlap the target");
}

/// exp(log_w) with the kMinPositiveWeight floor; -inf (a true zero of the
/// target) maps to 0 so callers can skip the draw.
double weight_from_log(double log_w) {
  if (log_w == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::max(std::exp(log_w), kMinPositiveWeight);
}

class FunctionStream final : public WeightedStream {
 public:
  FunctionStream(StreamInfo info, std::function<WeightedPoint(SplitRng&)> fn)
      : info_(std::move(info)), fn_(std::move(fn)) {}

  WeightedPoint next(SplitRng& rng) override { return fn_(rng); }
  const StreamInfo& info() const override { return info_; }

 private:
  StreamInfo info_;
  std::function<WeightedPoint(SplitRng&)> fn_;
};

StreamPtr make_stream(StreamInfo info, std::function<WeightedPoint(SplitRng&)> fn) {
  return std::make_unique<FunctionStream>(std::move(info), std::move(fn));
}

double mh_log_accept(const Density& target, const TransitionDensity& proposal, double from,
                     double to) {
  // log of target(to)q(from|to) / target(from)q(to|from), capped at 0.
  const double log_pi_to = target.in_support(to)
                               ? target.log_density(to)
                               : -std::numeric_limits<double>::infinity();
  if (!std::isfinite(log_pi_to)) return -std::numeric_limits<double>::infinity();
  const double log_ratio = log_pi_to + proposal.log_density(to, from) -
                           target.log_density(from) - proposal.log_density(from, to);
  if (std::isnan(log_ratio)) {
    throw ConfigError("mh: acceptance ratio undefined (zero proposal density at the current state)");
  }
  return std::min(0.0, log_ratio);
}

}  // namespace

StreamPtr standard_is(const Density& trial, const WeightFunction& wf) {
  if (!trial.has_sampler()) throw ConfigError("standard_is: trial needs an exact sampler");
  StreamInfo info{"is", wf.kappa(), TimeMode::continuous};
  return make_stream(info, [trial, wf](SplitRng& rng) -> WeightedPoint {
    for (int i = 0; i < kMaxSkipDraws; ++i) {
      const double x = trial.sample(rng);
      const double w = wf.clamped_weight(x);
      if (w > 0.0) return {x, w};
    }
    throw_degenerate_stream("standard_is");
  });
}

StreamPtr sz_sampler(const Density& trial_tilde, const WeightFunction& wf_tilde) {
  if (!trial_tilde.has_sampler()) throw ConfigError("sz_sampler: trial needs an exact sampler");
  StreamInfo info{"sz", wf_tilde.kappa(), TimeMode::discrete};
  return make_stream(info, [trial_tilde, wf_tilde](SplitRng& rng) -> WeightedPoint {
    for (int i = 0; i < kMaxSkipDraws; ++i) {
      const double z = trial_tilde.sample(rng);
      const double kw = wf_tilde.weight(z);
      const std::int64_t m = rng.geometric0(1.0 / (1.0 + kw));
      if (m > 0) return {z, static_cast<double>(m)};
    }
    throw_degenerate_stream("sz_sampler");
  });
}

StreamPtr gasemyr_sampler(const Density& trial_tilde, const WeightFunction& wf_tilde,
                          std::function<double(double)> accept_prob,
                          std::function<double(double)> geo_success, SplitRng& probe_rng,
                          int probes) {
  if (!trial_tilde.has_sampler()) throw ConfigError("gasemyr: trial needs an exact sampler");
  if (!accept_prob || !geo_success) throw ConfigError("gasemyr: q and a functions required");

  // a(z) must be proportional to q(z)/w(z); infer the constant from the
  // first probe and check the rest.
  double constant = 0.0;
  for (int i = 0; i < probes; ++i) {
    const double z = trial_tilde.sample(probe_rng);
    const double q = accept_prob(z);
    const double a = geo_success(z);
    if (!(q > 0.0) || q > 1.0) throw ConfigError("gasemyr: q(z) must lie in (0,1]");
    if (!(a > 0.0) || a > 1.0) throw ConfigError("gasemyr: a(z) must lie in (0,1]");
    const double c = a * wf_tilde.weight(z) / q;
    if (i == 0) {
      constant = c;
    } else if (std::abs(c - constant) > 1e-9 * std::max(std::abs(c), std::abs(constant))) {
      throw ConfigError("gasemyr: a(z) not proportional to q(z)/w(z) on probe points");
    }
  }

  StreamInfo info{"gasemyr", wf_tilde.kappa(), TimeMode::discrete};
  return make_stream(info, [trial_tilde, accept_prob, geo_success](SplitRng& rng) -> WeightedPoint {
    for (int i = 0; i < kMaxSkipDraws; ++i) {
      const double z = trial_tilde.sample(rng);
      if (!rng.bernoulli(accept_prob(z))) continue;
      return {z, static_cast<double>(rng.geometric1(geo_success(z)))};
    }
    throw_degenerate_stream("gasemyr_sampler");
  });
}

StreamPtr gasemyr_optimal(const Density& trial_tilde, const WeightFunction& wf_tilde,
                          SplitRng& probe_rng, int probes) {
  auto q = [wf_tilde](double z) { return std::min(1.0, wf_tilde.weight(z)); };
  auto a = [wf_tilde](double z) { return std::min(1.0, 1.0 / wf_tilde.weight(z)); };
  return gasemyr_sampler(trial_tilde, wf_tilde, q, a, probe_rng, probes);
}

StreamPtr exponential_weight_sampler(const Density& base_trial, const WeightFunction& wf) {
  if (!base_trial.has_sampler()) {
    throw ConfigError("exponential_weight_sampler: base needs an exact sampler");
  }
  return exponential_weight_sampler(
      [base_trial](SplitRng& rng) { return base_trial.sample(rng); }, wf);
}

StreamPtr exponential_weight_sampler(std::function<double(SplitRng&)> state_source,
                                     const WeightFunction& wf) {
  if (!state_source) throw ConfigError("exponential_weight_sampler: state source required");
  StreamInfo info{"exp", wf.kappa(), TimeMode::continuous};
  return make_stream(info, [state_source, wf](SplitRng& rng) -> WeightedPoint {
    for (int i = 0; i < kMaxSkipDraws; ++i) {
      const double x = state_source(rng);
      const double mean = wf.clamped_weight(x);
      if (mean > 0.0) return {x, rng.exponential_mean(mean)};
    }
    throw_degenerate_stream("exponential_weight_sampler");
  });
}

// ---------------------------------------------------------------------------
// Metropolis-Hastings

std::vector<double> MhTrace::chain() const {
  if (states.empty() || states.size() != accepted.size() || accepted[0] == 0) {
    throw InvalidInput("MhTrace: malformed trace (must start with an accepted state)");
  }
  std::vector<double> out(states.size());
  out[0] = states[0];
  for (std::size_t i = 1; i < states.size(); ++i) {
    out[i] = (accepted[i] != 0) ? states[i] : out[i - 1];
  }
  return out;
}

MhTrace run_mh_trace(const Density& target, const TransitionDensity& proposal, double initial,
                     std::size_t steps, SplitRng& rng) {
  if (!target.in_support(initial) || !std::isfinite(target.log_density(initial))) {
    throw ConfigError("mh: initial state has zero target density");
  }
  MhTrace trace;
  trace.states.reserve(steps + 1);
  trace.accepted.reserve(steps + 1);
  trace.states.push_back(initial);
  trace.accepted.push_back(1);
  double current = initial;
  for (std::size_t i = 0; i < steps; ++i) {
    const double z = proposal.sample(current, rng);
    const double log_a = mh_log_accept(target, proposal, current, z);
    const bool accept = std::log(rng.uniform01()) < log_a;
    trace.states.push_back(z);
    trace.accepted.push_back(accept ? 1 : 0);
    if (accept) current = z;
  }
  return trace;
}

std::vector<WeightedPoint> compress_mh_trace(const MhTrace& trace) {
  if (trace.states.empty() || trace.states.size() != trace.accepted.size() ||
      trace.accepted[0] == 0) {
    throw InvalidInput("compress_mh_trace: trace must start with an accepted state");
  }
  std::vector<WeightedPoint> out;
  double run_state = trace.states[0];
  double run_length = 1.0;
  for (std::size_t i = 1; i < trace.states.size(); ++i) {
    if (trace.accepted[i] != 0) {
      out.push_back({run_state, run_length});
      run_state = trace.states[i];
      run_length = 1.0;
    } else {
      run_length += 1.0;
    }
  }
  out.push_back({run_state, run_length});
  return out;
}

std::vector<double> decompress_holding(std::span<const WeightedPoint> points) {
  std::vector<double> out;
  for (const WeightedPoint& p : points) {
    if (!(p.weight > 0.0) || std::floor(p.weight) != p.weight) {
      throw ModeError("decompress_holding: holding counts must be positive integers");
    }
    out.insert(out.end(), static_cast<std::size_t>(p.weight), p.state);
  }
  return out;
}

namespace {

class MhStream final : public WeightedStream {
 public:
  MhStream(Density target, TransitionDensity proposal, double initial)
      : info_{"mh", 1.0, TimeMode::discrete},
        target_(std::move(target)),
        proposal_(std::move(proposal)),
        current_(initial) {
    if (!target_.in_support(initial) || !std::isfinite(target_.log_density(initial))) {
      throw ConfigError("mh: initial state has zero target density");
    }
  }

  WeightedPoint next(SplitRng& rng) override {
    double holding = 1.0;
    while (true) {
      const double z = proposal_.sample(current_, rng);
      const double log_a = mh_log_accept(target_, proposal_, current_, z);
      if (std::log(rng.uniform01()) < log_a) {
        const WeightedPoint emitted{current_, holding};
        current_ = z;
        return emitted;
      }
      holding += 1.0;
    }
  }

  const StreamInfo& info() const override { return info_; }

 private:
  StreamInfo info_;
  Density target_;
  TransitionDensity proposal_;
  double current_;
};

}  // namespace

StreamPtr mh_sampler(const Density& target, const TransitionDensity& proposal, double initial) {
  return std::make_unique<MhStream>(target, proposal, initial);
}

MhDecomposition mh_embedded_decomposition(std::span<const double> target_pmf,
                                          const std::vector<std::vector<double>>& proposal) {
  const std::size_t k = target_pmf.size();
  if (proposal.size() != k) throw InvalidInput("mh_embedded_decomposition: dimension mismatch");
  MhDecomposition out;
  out.accept_prob.assign(k, 0.0);
  out.embedded_kernel.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t y = 0; y < k; ++y) {
    if (proposal[y].size() != k) {
      throw InvalidInput("mh_embedded_decomposition: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t z = 0; z < k; ++z) {
      double a = 1.0;
      if (target_pmf[y] * proposal[y][z] > 0.0) {
        a = std::min(1.0, target_pmf[z] * proposal[z][y] / (target_pmf[y] * proposal[y][z]));
      }
      out.embedded_kernel[y][z] = proposal[y][z] * a;
      s += out.embedded_kernel[y][z];
    }
    out.accept_prob[y] = s;
    for (std::size_t z = 0; z < k; ++z) out.embedded_kernel[y][z] /= s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reweighting of existing chain output

namespace {

WeightedPoint reweight_point(double prev, double cur, const TransitionDensity& transition,
                             const Density& target) {
  const double log_q = transition.log_density(prev, cur);
  if (!std::isfinite(log_q)) {
    throw SupportViolation("reweight: zero transition density along the trace");
  }
  const double w = weight_from_log(target.log_density(cur) - log_q);
  if (!(w > 0.0)) {
    throw InvalidInput("reweight: zero weight (target vanishes on the trace)");
  }
  return {cur, w};
}

}  // namespace

std::vector<WeightedPoint> reweight_chain_output(std::span<const double> states,
                                                 const TransitionDensity& transition,
                                                 const Density& target) {
  if (states.size() < 2) throw InvalidInput("reweight_chain_output: need at least two states");
  std::vector<WeightedPoint> out;
  out.reserve(states.size() - 1);
  for (std::size_t i = 1; i < states.size(); ++i) {
    out.push_back(reweight_point(states[i - 1], states[i], transition, target));
  }
  return out;
}

std::vector<std::size_t> mh_anchor_indices(const MhTrace& trace) {
  if (trace.states.empty() || trace.states.size() != trace.accepted.size()) {
    throw InvalidInput("mh_anchor_indices: malformed trace");
  }
  if (trace.accepted[0] == 0) {
    throw InvalidInput("mh_anchor_indices: no accepted state before the first proposal");
  }
  std::vector<std::size_t> anchors;
  anchors.reserve(trace.states.size() - 1);
  std::size_t last_accepted = 0;
  for (std::size_t i = 1; i < trace.states.size(); ++i) {
    anchors.push_back(last_accepted);
    if (trace.accepted[i] != 0) last_accepted = i;
  }
  return anchors;
}

std::vector<WeightedPoint> reweight_mh_proposals(const MhTrace& trace,
                                                 const TransitionDensity& proposal,
                                                 const Density& target) {
  const std::vector<std::size_t> anchors = mh_anchor_indices(trace);
  std::vector<WeightedPoint> out;
  out.reserve(anchors.size());
  for (std::size_t i = 1; i < trace.states.size(); ++i) {
    out.push_back(
        reweight_point(trace.states[anchors[i - 1]], trace.states[i], proposal, target));
  }
  return out;
}

namespace {

class ReweightChainStream final : public WeightedStream {
 public:
  ReweightChainStream(TransitionDensity transition, Density target, double initial)
      : info_{"reweight-chain", 1.0, TimeMode::continuous},
        transition_(std::move(transition)),
        target_(std::move(target)),
        current_(initial) {}

  WeightedPoint next(SplitRng& rng) override {
    const double z = transition_.sample(current_, rng);
    const WeightedPoint p = reweight_point(current_, z, transition_, target_);
    current_ = z;
    return p;
  }

  const StreamInfo& info() const override { return info_; }

 private:
  StreamInfo info_;
  TransitionDensity transition_;
  Density target_;
  double current_;
};

class ReweightMhStream final : public WeightedStream {
 public:
  ReweightMhStream(Density target, TransitionDensity proposal, double initial)
      : info_{"reweight-mh", 1.0, TimeMode::continuous},
        target_(std::move(target)),
        proposal_(std::move(proposal)),
        anchor_(initial) {
    if (!target_.in_support(initial) || !std::isfinite(target_.log_density(initial))) {
      throw ConfigError("reweight-mh: initial state has zero target density");
    }
  }

  WeightedPoint next(SplitRng& rng) override {
    const double z = proposal_.sample(anchor_, rng);
    const WeightedPoint p = reweight_point(anchor_, z, proposal_, target_);
    const double log_a = mh_log_accept(target_, proposal_, anchor_, z);
    if (std::log(rng.uniform01()) < log_a) anchor_ = z;
    return p;
  }

  const StreamInfo& info() const override { return info_; }

 private:
  StreamInfo info_;
  Density target_;
  TransitionDensity proposal_;
  double anchor_;
};

}  // namespace

StreamPtr reweight_chain_sampler(const TransitionDensity& transition, const Density& target,
                                 double initial) {
  if (!transition.has_sampler()) {
    throw ConfigError("reweight_chain_sampler: transition needs a sampler");
  }
  return std::make_unique<ReweightChainStream>(transition, target, initial);
}

StreamPtr reweight_mh_sampler(const Density& target, const TransitionDensity& proposal,
                              double initial) {
  if (!proposal.has_sampler()) {
    throw ConfigError("reweight_mh_sampler: proposal needs a sampler");
  }
  return std::make_unique<ReweightMhStream>(target, proposal, initial);
}

void extend_path_past(JumpPath& path, WeightedStream& stream, SplitRng& rng, double t) {
  while (path.size() == 0 || path.total_time() <= t) {
    path.append(stream.next(rng));
  }
}

}  // namespace jumpmc
