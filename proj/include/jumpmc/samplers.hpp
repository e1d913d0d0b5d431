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

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jumpmc/measure.hpp"
#include "jumpmc/renewal.hpp"
#include "jumpmc/sojourn.hpp"

namespace jumpmc {

struct StreamInfo {
  std::string scheme;
  double kappa = 1.0;
  TimeMode mode = TimeMode::continuous;
};

/// A generator of properly weighted points. Streams are single-consumer
/// (they carry a cursor/chain state); replicated experiments create
/// independent streams, each driven by its own SplitRng.
class WeightedStream {
 public:
  virtual ~WeightedStream() = default;
  virtual WeightedPoint next(SplitRng& rng) = 0;
  virtual const StreamInfo& info() const = 0;
};

using StreamPtr = std::unique_ptr<WeightedStream>;

/// iid draws x ~ trial with the deterministic weight kappa*target/trial.
/// Zero-weight draws (states where the target vanishes) are skipped so that
/// emitted weights are strictly positive.
StreamPtr standard_is(const Density& trial, const WeightFunction& wf);

/// Draws z ~ trial and a geometric count on {0,1,...} with success
/// 1/(1+kappa*w(z)); zero counts are rejected and the accepted z is emitted
/// with its count, a truncated geometric on {1,2,...} with mean
/// 1+kappa*w(z).
StreamPtr sz_sampler(const Density& trial_tilde, const WeightFunction& wf_tilde);

/// Bernoulli(q(z)) acceptance of z ~ trial, accepted states weighted by a
/// geometric on {1,2,...} with success a(z). Requires a(z) proportional to
/// q(z)/w(z); the constant is inferred from the first of `probes` points
/// drawn from the trial and validated on the rest (relative 1e-9).
StreamPtr gasemyr_sampler(const Density& trial_tilde, const WeightFunction& wf_tilde,
                          std::function<double(double)> accept_prob,
                          std::function<double(double)> geo_success, SplitRng& probe_rng,
                          int probes = 100);

/// The variance-optimal choice q(z)=min{1,kappa*w(z)},
/// a(z)=min{1,1/(kappa*w(z))}. With kappa <= 1/w* every accepted weight is 1
/// and accepted states are exact target draws.
StreamPtr gasemyr_optimal(const Density& trial_tilde, const WeightFunction& wf_tilde,
                          SplitRng& probe_rng, int probes = 100);

/// Each state x from the base source is weighted by an exponential draw with
/// mean kappa*w(x); the associated jump process is a continuous-time Markov
/// jump process.
StreamPtr exponential_weight_sampler(const Density& base_trial, const WeightFunction& wf);
StreamPtr exponential_weight_sampler(std::function<double(SplitRng&)> state_source,
                                     const WeightFunction& wf);

// ---------------------------------------------------------------------------
// Metropolis-Hastings

/// Raw MH output: states[0] is the initial state; for i >= 1, states[i] is
/// the i-th proposal and accepted[i] says whether it was taken. The chain
/// realization is states[i] if accepted, else the previous chain state.
struct MhTrace {
  std::vector<double> states;
  std::vector<std::uint8_t> accepted;  // accepted[0] == 1 by construction

  std::size_t size() const { return states.size(); }
  /// The chain realization (current state after each step).
  std::vector<double> chain() const;
};

MhTrace run_mh_trace(const Density& target, const TransitionDensity& proposal,
                     double initial, std::size_t steps, SplitRng& rng);

/// Acceptance-delimited run-length compression of an MH trace: one point per
/// accepted state, holding count = 1 + number of subsequent rejections. The
/// trailing (possibly still open) run is included, so decompression
/// reproduces the chain exactly.
std::vector<WeightedPoint> compress_mh_trace(const MhTrace& trace);

/// Inverse of compress_mh_trace: repeats each state its holding count.
std::vector<double> decompress_holding(std::span<const WeightedPoint> points);

/// Streaming MH: emits each accepted state with its geometric holding count
/// once the next acceptance occurs. The associated discrete-time jump
/// process reproduces the MH chain exactly.
StreamPtr mh_sampler(const Density& target, const TransitionDensity& proposal,
                     double initial);

/// Per-state acceptance probability s(y) and accepted-transition kernel
/// g(z|y) implied by the compression, for a discrete target/proposal pair.
/// Assembling (1-s(y))*I + s(y)*g(z|y) reconstructs the one-step MH kernel.
struct MhDecomposition {
  std::vector<double> accept_prob;                  // s(y)
  std::vector<std::vector<double>> embedded_kernel; // g(z|y)
};
MhDecomposition mh_embedded_decomposition(std::span<const double> target_pmf,
                                          const std::vector<std::vector<double>>& proposal);

// ---------------------------------------------------------------------------
// Reweighting of existing chain output

/// Weights a chain trace by target(y_i)/transition(y_i|y_{i-1}) for i >= 1,
/// computed in log space. The transition density must be positive along the
/// trace.
std::vector<WeightedPoint> reweight_chain_output(std::span<const double> states,
                                                 const TransitionDensity& transition,
                                                 const Density& target);

/// Weights every MH proposal y_i by target(y_i)/q(y_i|y_anchor(i)), where
/// anchor(i) is the last accepted index before i. The trace must start with
/// an accepted state.
std::vector<WeightedPoint> reweight_mh_proposals(const MhTrace& trace,
                                                 const TransitionDensity& proposal,
                                                 const Density& target);

/// Indices anchor(i) for i = 1..trace.size()-1.
std::vector<std::size_t> mh_anchor_indices(const MhTrace& trace);

/// Streaming forms that advance the underlying chain lazily.
StreamPtr reweight_chain_sampler(const TransitionDensity& transition, const Density& target,
                                 double initial);
StreamPtr reweight_mh_sampler(const Density& target, const TransitionDensity& proposal,
                              double initial);

// ---------------------------------------------------------------------------

/// Append draws from the stream until the path strictly covers time t.
void extend_path_past(JumpPath& path, WeightedStream& stream, SplitRng& rng, double t);

}  // namespace jumpmc
