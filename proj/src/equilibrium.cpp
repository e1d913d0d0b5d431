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

#include "jumpmc/equilibrium.hpp"

#include <cmath>

#include "jumpmc/numeric.hpp"

namespace jumpmc {

namespace {

// Generous cap; acceptance has probability kappa*epsilon_star per trial, so
// hitting this means the floor or the joint sampler is wrong.
constexpr long kMaxExactStartTrials = 100000000L;

}  // namespace

double excess_sojourn_sample(const SojournLaw& law, double y, SplitRng& rng) {
  switch (law.kind()) {
    case SojournLaw::Kind::deterministic:
      return rng.uniform(0.0, law.mean(y));
    case SojournLaw::Kind::geometric: {
      const double t = law.sample_size_biased(y, rng);
      return std::floor(rng.uniform(0.0, t)) + 1.0;  // uniform on {1,...,T}
    }
    case SojournLaw::Kind::exponential: {
      const double t = law.sample_size_biased(y, rng);
      return rng.uniform(0.0, t);
    }
    case SojournLaw::Kind::custom: {
      if (!law.has_size_biased_sampler()) {
        throw ConfigError("excess_sojourn_sample: custom law without a size-biased sampler");
      }
      const double t = law.sample_size_biased(y, rng);
      if (law.discrete_weights()) return std::floor(rng.uniform(0.0, t)) + 1.0;
      return rng.uniform(0.0, t);
    }
  }
  throw ConfigError("excess_sojourn_sample: unknown law kind");
}

HazardFloor hazard_floor(const SojournLaw& law, std::span<const double> state_probes,
                         std::span<const double> weight_probes) {
  if (state_probes.empty()) throw InvalidInput("hazard_floor: no state probes");
  HazardFloor floor;
  floor.state_probes.assign(state_probes.begin(), state_probes.end());
  floor.weight_probes.assign(weight_probes.begin(), weight_probes.end());

  switch (law.kind()) {
    case SojournLaw::Kind::deterministic:
      throw ConfigError("hazard_floor: point-mass sojourns have no hazard floor");
    case SojournLaw::Kind::geometric: {
      double inf = 1.0;
      for (double y : state_probes) inf = std::min(inf, law.geometric_success(y));
      floor.epsilon_star = inf;
      floor.closed_form = true;
      floor.note = "geometric: constant hazard a(y); floor = min over states";
      break;
    }
    case SojournLaw::Kind::exponential: {
      double sup_mean = 0.0;
      for (double y : state_probes) sup_mean = std::max(sup_mean, law.mean(y));
      floor.epsilon_star = 1.0 / sup_mean;
      floor.closed_form = true;
      floor.note = "exponential: hazard 1/mean(y); floor = 1/max mean";
      break;
    }
    case SojournLaw::Kind::custom: {
      if (weight_probes.empty()) {
        throw InvalidInput("hazard_floor: custom law needs weight probes");
      }
      double inf = std::numeric_limits<double>::infinity();
      for (double y : state_probes) {
        for (double v : weight_probes) {
          inf = std::min(inf, law.hazard(v, y));
        }
      }
      floor.epsilon_star = inf;
      floor.closed_form = false;
      floor.note = "custom: grid infimum over probes only, not a certified bound";
      break;
    }
  }
  if (!(floor.epsilon_star > 0.0) || !std::isfinite(floor.epsilon_star)) {
    throw ConfigError("hazard_floor: hazard is not bounded away from zero on the probes");
  }
  return floor;
}

EquilibriumStart stationary_start(const Density& target, const SojournLaw& law, SplitRng& rng) {
  if (!target.has_sampler()) {
    throw ConfigError("stationary_start: target needs an exact sampler");
  }
  EquilibriumStart start;
  start.initial_state = target.sample(rng);
  start.initial_weight = excess_sojourn_sample(law, start.initial_state, rng);
  start.tau = 0.0;
  start.trials_used = 1;
  return start;
}

ExactStartResult exact_start(const std::function<WeightedPoint(SplitRng&)>& joint_sampler,
                             const SojournLaw& law, const HazardFloor& floor, SplitRng& rng) {
  if (!joint_sampler) throw ConfigError("exact_start: joint sampler required");
  if (law.kind() == SojournLaw::Kind::deterministic) {
    throw ConfigError("exact_start: point-mass sojourns are not accept-reject startable");
  }
  ExactStartResult result;
  KahanSum tau;
  for (long trial = 1; trial <= kMaxExactStartTrials; ++trial) {
    const WeightedPoint cand = joint_sampler(rng);
    const double ratio = floor.epsilon_star / law.hazard(cand.weight, cand.state);
    if (ratio > 1.0 + 1e-12) {
      throw ConfigError("exact_start: acceptance ratio exceeds 1; hazard floor is invalid");
    }
    if (rng.uniform01() <= ratio) {
      result.start.initial_state = cand.state;
      result.start.initial_weight = cand.weight;
      result.start.tau = tau.value();
      result.start.trials_used = trial;
      return result;
    }
    result.consumed.push_back(cand);
    tau.add(cand.weight);
  }
  throw ConfigError("exact_start: no acceptance after the trial cap; configuration is wrong");
}

MomentBoundReport moment_bound_check(const SojournLaw& law, const HazardFloor& floor,
                                     int m_max, std::span<const double> state_probes,
                                     double kappa, SplitRng& rng, long draws) {
  if (m_max < 1 || m_max > 6) {
    throw InvalidInput("moment_bound_check: m_max must be in 1..6");
  }
  if (state_probes.empty()) throw InvalidInput("moment_bound_check: no state probes");
  if (!(kappa > 0.0)) throw InvalidInput("moment_bound_check: kappa must be positive");

  MomentBoundReport report;
  report.weight_cap = 1.0 / (kappa * floor.epsilon_star);
  report.all_ok = true;

  double factorial = 1.0;
  std::vector<double> bounds(m_max + 1, 0.0);
  for (int m = 1; m <= m_max; ++m) {
    factorial *= m;
    bounds[m] = factorial / std::pow(floor.epsilon_star, m);
  }

  for (double y : state_probes) {
    std::vector<KahanSum> sums(m_max + 1);
    std::vector<KahanSum> sq_sums(m_max + 1);
    for (long i = 0; i < draws; ++i) {
      const double xi = law.sample(y, rng);
      double power = 1.0;
      for (int m = 1; m <= m_max; ++m) {
        power *= xi;
        sums[m].add(power);
        sq_sums[m].add(power * power);
      }
    }
    for (int m = 1; m <= m_max; ++m) {
      const double n = static_cast<double>(draws);
      const double mean = sums[m].value() / n;
      const double var = std::max(0.0, sq_sums[m].value() / n - mean * mean);
      MomentBoundRow row;
      row.state = y;
      row.m = m;
      row.empirical = mean;
      row.bound = bounds[m];
      row.stderr_ = std::sqrt(var / n);
      row.ok = mean <= bounds[m] + 4.0 * row.stderr_;
      report.all_ok = report.all_ok && row.ok;
      report.rows.push_back(row);
    }
    report.max_weight = std::max(report.max_weight, law.mean(y) / kappa);
  }
  report.weight_ok = report.max_weight <= report.weight_cap + 1e-12;
  report.all_ok = report.all_ok && report.weight_ok;
  return report;
}

}  // namespace jumpmc
