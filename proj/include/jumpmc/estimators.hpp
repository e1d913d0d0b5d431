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
#include <span>

#include "jumpmc/renewal.hpp"
#include "jumpmc/sojourn.hpp"

namespace jumpmc {

using StateFunction = std::function<double(double)>;

struct EstimateResult {
  double value = 0.0;
  double n_or_t = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
};

/// sum(xi_i * h(x_i)) / n. Intended for deterministic importance weights on
/// normalized densities, where the weight sum needs no renormalization.
EstimateResult is_mean_unnormalized(std::span<const WeightedPoint> points,
                                    const StateFunction& h);

/// Self-normalized weighted mean sum(xi*h)/sum(xi); serves deterministic and
/// random weights alike, and is invariant to global weight rescaling.
EstimateResult weighted_mean(std::span<const WeightedPoint> points, const StateFunction& h);

/// Time average of h over the path up to horizon t: complete sojourns plus
/// the partial contribution (t - S_{N_t}) of the running one, divided by t.
/// In discrete mode t must be a positive integer and the average runs over
/// the grid points 0..t-1. Accepts t equal to the path's total time (all
/// sojourns complete, no partial term).
EstimateResult time_average(const JumpPath& path, const StateFunction& h, double t);

/// Monte Carlo estimate of the estimator-variance inflation caused by weight
/// randomization: mean over visited states of
/// Var{xi|x} * (h(x) - center)^2 / kappa^2. The law must expose a
/// closed-form conditional variance.
double variance_inflation(std::span<const WeightedPoint> points, const StateFunction& h,
                          const SojournLaw& law, double kappa, double center);
/// Same, centering at the self-normalized weighted mean of the input.
double variance_inflation(std::span<const WeightedPoint> points, const StateFunction& h,
                          const SojournLaw& law, double kappa);

/// Diagnostics metadata: (sum xi)^2 / sum xi^2.
double effective_sample_size(std::span<const WeightedPoint> points);

}  // namespace jumpmc
