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

#include <span>
#include <string>
#include <vector>

#include "jumpmc/measure.hpp"
#include "jumpmc/renewal.hpp"
#include "jumpmc/sojourn.hpp"

namespace jumpmc {

/// The starting point of an equilibrium run: an initial (state, weight) pair
/// together with the time tau after which the jump process is exactly
/// target-distributed and the number of candidate draws consumed.
struct EquilibriumStart {
  double initial_state = 0.0;
  double initial_weight = 0.0;
  double tau = 0.0;           // 0 for a stationary start
  long trials_used = 1;       // accept-reject candidates, including the accepted one
};

/// A positive uniform lower bound on the sojourn hazard p(v|x)/P(xi>=v|x),
/// together with the probe grid that produced it. Closed-form laws yield an
/// exact bound; custom laws only a grid infimum (recorded in `note`).
struct HazardFloor {
  double epsilon_star = 0.0;
  std::vector<double> state_probes;
  std::vector<double> weight_probes;
  bool closed_form = false;
  std::string note;
};

/// Draw from the equilibrium excess-life distribution
/// p_e(v|y) = P(xi >= v|y) / mean(y), via the two-stage recipe: first a
/// size-biased sojourn T (law proportional to t*p(t|y)), then V uniform on
/// (0,T) (continuous) or on {1,...,T} (discrete). The deterministic law
/// short-circuits to V ~ Uniform(0, mean(y)).
double excess_sojourn_sample(const SojournLaw& law, double y, SplitRng& rng);

/// Closed-form hazard floors: the geometric hazard is the success
/// probability itself, the exponential hazard the reciprocal mean; custom
/// laws are probed numerically on the (state, weight) grid. Deterministic
/// laws have no density and are rejected.
HazardFloor hazard_floor(const SojournLaw& law, std::span<const double> state_probes,
                         std::span<const double> weight_probes = {});

/// Start at equilibrium by exact sampling: X0 from the target's exact
/// sampler, xi0 from the excess-life law.
EquilibriumStart stationary_start(const Density& target, const SojournLaw& law, SplitRng& rng);

/// Result of the accept-reject equilibrium start. `start` carries the
/// accepted (state, weight) pair; `consumed` the rejected candidates in
/// order, whose weights sum to start.tau. Prepending them to the path gives
/// the unconditioned process, which is exactly target-distributed from time
/// tau onward.
struct ExactStartResult {
  EquilibriumStart start;
  std::vector<WeightedPoint> consumed;
};

/// Draws (x, xi) pairs from the joint base law until
/// U <= epsilon_star * P(xi >= v|x) / p(v|x) accepts one; the accepted pair
/// is distributed as target(x) * p_e(xi|x).
ExactStartResult exact_start(const std::function<WeightedPoint(SplitRng&)>& joint_sampler,
                             const SojournLaw& law, const HazardFloor& floor, SplitRng& rng);

/// Empirical check of the factorial moment bounds E{xi^m|y} <= m!/eps^m and
/// of the mean-weight cap w(y) <= 1/(kappa*eps). Violations are reported,
/// not thrown.
struct MomentBoundRow {
  double state = 0.0;
  int m = 0;
  double empirical = 0.0;
  double bound = 0.0;
  double stderr_ = 0.0;
  bool ok = false;
};
struct MomentBoundReport {
  std::vector<MomentBoundRow> rows;
  double max_weight = 0.0;       // max over probes of mean(y)/kappa
  double weight_cap = 0.0;       // 1/(kappa*epsilon_star)
  bool weight_ok = false;
  bool all_ok = false;
};
MomentBoundReport moment_bound_check(const SojournLaw& law, const HazardFloor& floor,
                                     int m_max, std::span<const double> state_probes,
                                     double kappa, SplitRng& rng, long draws = 100000);

}  // namespace jumpmc
