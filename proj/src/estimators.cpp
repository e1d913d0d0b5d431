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

#include "jumpmc/estimators.hpp"

#include <cmath>

#include "jumpmc/numeric.hpp"

namespace jumpmc {

EstimateResult is_mean_unnormalized(std::span<const WeightedPoint> points,
                                    const StateFunction& h) {
  if (points.empty()) throw InvalidInput("is_mean_unnormalized: empty input");
  KahanSum num;
  for (const WeightedPoint& p : points) num.add(p.weight * h(p.state));
  const double n = static_cast<double>(points.size());
  return {num.value() / n, n, num.value(), n};
}

EstimateResult weighted_mean(std::span<const WeightedPoint> points, const StateFunction& h) {
  if (points.empty()) throw InvalidInput("weighted_mean: empty input");
  KahanSum num;
  KahanSum den;
  for (const WeightedPoint& p : points) {
    num.add(p.weight * h(p.state));
    den.add(p.weight);
  }
  if (!(den.value() > 0.0)) throw InvalidInput("weighted_mean: weight sum must be positive");
  return {num.value() / den.value(), static_cast<double>(points.size()), num.value(),
          den.value()};
}

EstimateResult time_average(const JumpPath& path, const StateFunction& h, double t) {
  if (!(t > 0.0)) throw InvalidInput("time_average: horizon must be positive");
  if (path.mode() == TimeMode::discrete && std::floor(t) != t) {
    throw ModeError("time_average: discrete mode requires an integer horizon");
  }
  if (path.size() == 0 || t > path.total_time()) {
    throw PathExhausted("time_average: path does not cover the horizon");
  }

  KahanSum num;
  std::size_t n_complete;
  if (t == path.total_time()) {
    n_complete = path.size();  // every sojourn is complete, no partial term
  } else {
    n_complete = path.count_at(t);
    const double partial = t - path.epochs()[n_complete];
    if (partial > 0.0) num.add(partial * h(path.points()[n_complete].state));
  }
  for (std::size_t j = 0; j < n_complete; ++j) {
    num.add(path.points()[j].weight * h(path.points()[j].state));
  }
  return {num.value() / t, t, num.value(), t};
}

double variance_inflation(std::span<const WeightedPoint> points, const StateFunction& h,
                          const SojournLaw& law, double kappa, double center) {
  if (points.empty()) throw InvalidInput("variance_inflation: empty input");
  if (!(kappa > 0.0)) throw InvalidInput("variance_inflation: kappa must be positive");
  KahanSum acc;
  for (const WeightedPoint& p : points) {
    const auto var = law.variance(p.state);
    if (!var) {
      throw ConfigError("variance_inflation: law has no closed-form conditional variance");
    }
    const double d = h(p.state) - center;
    acc.add(*var * d * d);
  }
  return acc.value() / (static_cast<double>(points.size()) * kappa * kappa);
}

double variance_inflation(std::span<const WeightedPoint> points, const StateFunction& h,
                          const SojournLaw& law, double kappa) {
  return variance_inflation(points, h, law, kappa, weighted_mean(points, h).value);
}

double effective_sample_size(std::span<const WeightedPoint> points) {
  if (points.empty()) throw InvalidInput("effective_sample_size: empty input");
  KahanSum sum;
  KahanSum sum_sq;
  for (const WeightedPoint& p : points) {
    sum.add(p.weight);
    sum_sq.add(p.weight * p.weight);
  }
  return sum.value() * sum.value() / sum_sq.value();
}

}  // namespace jumpmc
