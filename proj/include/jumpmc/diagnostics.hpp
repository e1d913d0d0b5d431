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
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "jumpmc/measure.hpp"
#include "jumpmc/samplers.hpp"

namespace jumpmc {

// ---------------------------------------------------------------------------
// Exact oracles on small discrete state spaces

/// Limit distribution of the jump process: the normalized elementwise
/// product of the embedded-state distribution and the mean sojourn per
/// state.
std::vector<double> exact_limit_discrete(std::span<const double> g_pmf,
                                         std::span<const double> mean_sojourn);

/// A small discrete-state benchmark driven by integer sojourns: embedded
/// chain with initial distribution `initial_pmf` and transition kernel
/// `kernel` (iid rows for independence schemes), per-state sojourn law
/// (geometric or integer-deterministic).
struct DiscreteBenchmark {
  std::vector<double> initial_pmf;
  std::vector<std::vector<double>> kernel;  // row y: distribution of the next state
  SojournLaw law;
  double kappa = 1.0;
};

struct DiscreteMarginal {
  std::vector<double> pmf;
  double truncated_mass = 0.0;  // probability clipped from residual tails
};

/// Exact law of the discrete-time process at integer time t, by dynamic
/// programming on (state, residual sojourn). Residual tails below 1e-14 are
/// truncated and renormalized, with the clipped mass reported.
DiscreteMarginal brute_force_marginal_discrete(const DiscreteBenchmark& benchmark, long t);

/// One-step MH transition matrix on a finite state space, assembled directly
/// from the acceptance rule: off-diagonal mass proposal*acceptance, diagonal
/// the self-proposal plus all rejection mass.
std::vector<std::vector<double>> mh_kernel_discrete(
    std::span<const double> target_pmf, const std::vector<std::vector<double>>& proposal);

// ---------------------------------------------------------------------------
// Total variation estimation

struct TvEstimate {
  double tv = 0.0;
  double mc_error = 0.0;
};

/// Binning for continuous references: `count` equal-width cells on [lo,hi]
/// plus two overflow cells for the tails. Binned TV lower-bounds the true
/// total variation distance.
struct BinSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 60;
};

/// Equal-width range holding all but `tail_mass` of the reference
/// probability (found by quadrature bisection).
BinSpec default_bin_spec(const Density& reference, int count = 60, double tail_mass = 1e-4);

/// Per-cell probabilities of a continuous reference on the given binning
/// (quadrature on the interior cells, tail integrals on the overflow cells).
/// Requires a normalized reference.
std::vector<double> reference_bin_probs(const Density& reference, const BinSpec& bins);

/// Cell counts of the samples on the binning (first and last cell are the
/// overflow cells).
std::vector<long> bin_counts(std::span<const double> samples, const BinSpec& bins);

/// Half L1 distance between the empirical cell frequencies and a reference
/// pmf; the Monte Carlo error is a nonparametric bootstrap (200 resamples)
/// standard deviation. Needs at least 1000 samples.
TvEstimate estimate_tv(std::span<const double> samples, std::span<const double> reference_pmf,
                       SplitRng& rng);
/// Continuous version: samples are binned and compared to the reference's
/// cell probabilities. The reference must carry a normalizer.
TvEstimate estimate_tv(std::span<const double> samples, const Density& reference,
                       const BinSpec& bins, SplitRng& rng);

// ---------------------------------------------------------------------------
// Analytic bound curves

enum class BoundKind { doeblin, mh_independence, sz, gasemyr };

struct BoundParams {
  double beta = 1.0;    // minorization constant for the doeblin bound; 1 for iid bases
  double kappa = 1.0;
  double w_star = 1.0;  // sup of target/trial (without kappa)
};

/// Evaluate the named total-variation bound on a time grid:
///   doeblin:          exp(-beta*t/(kappa*w_star))
///   mh_independence: (1 - 1/w_star)^t
///   sz:              (1 + kappa*w_star)^(-t)
///   gasemyr:         (1 - 1/(kappa*w_star))^t, requires kappa*w_star > 1
std::vector<double> bound_curve(BoundKind kind, const BoundParams& params,
                                std::span<const double> times);

// ---------------------------------------------------------------------------
// Replicated runs

/// How one replicate is built: an independent stream, an optional explicit
/// first point (equilibrium starts), and the time mode of the resulting
/// path.
struct ReplicateSpec {
  std::function<StreamPtr(SplitRng&)> make_stream;  // receives the replicate's probe stream
  std::function<std::optional<WeightedPoint>(SplitRng&)> make_initial;  // may be null
  TimeMode mode = TimeMode::continuous;
};

/// Runs m independent replicates, each extended until it covers
/// max(times), and records the process state at every grid time.
/// Deterministic in (seed, replicate index) and independent of `workers`.
/// result[k][r] is replicate r's state at times[k].
std::vector<std::vector<double>> run_replicates(const ReplicateSpec& spec,
                                                std::span<const double> times, long m,
                                                std::uint64_t seed, int workers = 1);

/// Full TV-versus-time report from replicated runs.
struct TvReport {
  std::vector<double> times;
  std::vector<double> tv;
  std::vector<double> mc_error;
  std::vector<double> bound;  // empty when no bound was requested
  long replicates = 0;
  std::string bins;           // human-readable binning descriptor

  void write_csv(std::ostream& out) const;  // columns: time,tv,bound,mc_error
};

}  // namespace jumpmc
