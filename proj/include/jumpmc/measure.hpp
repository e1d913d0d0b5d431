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

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jumpmc/common.hpp"
#include "jumpmc/rng.hpp"

namespace jumpmc {

/// States are scalar: a point of the real line on interval supports, or an
/// atom index 0..n-1 (stored as a double) on discrete supports. Interval
/// supports use Lebesgue reference measure, discrete supports counting
/// measure.
struct Support {
  enum class Kind { interval, discrete };

  Kind kind = Kind::interval;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  int n_atoms = 0;

  static Support all_reals() { return Support{}; }
  static Support interval(double lo, double hi) {
    return Support{Kind::interval, lo, hi, 0};
  }
  static Support atoms(int n) {
    return Support{Kind::discrete, 0.0, static_cast<double>(n - 1), n};
  }

  bool is_discrete() const { return kind == Kind::discrete; }

  bool contains(double x) const {
    if (kind == Kind::interval) return x >= lo && x <= hi;
    const double r = std::round(x);
    return r == x && r >= 0.0 && r < static_cast<double>(n_atoms);
  }
};

/// An evaluable, possibly unnormalized probability density with an optional
/// exact sampler. Immutable after construction and safe to share across
/// threads; all randomness enters through the SplitRng argument.
class Density {
 public:
  using LogDensityFn = std::function<double(double)>;
  using SamplerFn = std::function<double(SplitRng&)>;

  Density(std::string name, Support support, LogDensityFn log_density,
          std::optional<double> normalizer = std::nullopt,
          SamplerFn sampler = nullptr);

  const std::string& name() const { return name_; }
  const Support& support() const { return support_; }

  bool in_support(double x) const { return support_.contains(x); }

  /// Log of the (possibly unnormalized) density. Throws SupportViolation
  /// outside the declared support.
  double log_unnormalized(double x) const;

  bool has_normalizer() const { return normalizer_.has_value(); }
  double normalizer() const;

  /// log(density/normalizer); requires a declared normalizer.
  double log_normalized(double x) const;

  /// Best available log density: normalized when the constant is known,
  /// otherwise unnormalized.
  double log_density(double x) const {
    return normalizer_ ? log_normalized(x) : log_unnormalized(x);
  }

  bool has_sampler() const { return static_cast<bool>(sampler_); }
  double sample(SplitRng& rng) const;

 private:
  std::string name_;
  Support support_;
  LogDensityFn log_density_;
  std::optional<double> normalizer_;
  SamplerFn sampler_;
};

// Concrete families. All are normalized (normalizer 1) and carry exact
// samplers.
Density normal_density(double mu, double sigma);
Density cauchy_density(double x0, double gamma);
/// Mixture of densities on a common interval support; weights are
/// normalized internally and must be positive.
Density mixture_density(std::vector<double> weights, std::vector<Density> components);
/// Finite distribution on atoms 0..k-1; probabilities normalized internally.
Density discrete_density(std::vector<double> pmf);

/// The worked example used throughout the test battery: a three-component
/// normal mixture target with a wide centered Cauchy trial.
Density example_mixture_target();
Density example_cauchy_trial();

/// Smallest weight the samplers emit at states where the target is
/// positive. True weights below double range clamp here instead of
/// vanishing: dropping such draws would condition the embedded chain on the
/// clamp set and bias the mean weight, while a 1e-300 sojourn is
/// indistinguishable from the true subnormal one in every estimator.
inline constexpr double kMinPositiveWeight = 1e-300;

/// w(x) = kappa * target(x)/trial(x), evaluated in log space. Normalizing
/// constants are applied when declared, so for fully normalized pairs the
/// ratio is the exact density ratio.
class WeightFunction {
 public:
  WeightFunction(Density target, Density trial, double kappa = 1.0,
                 std::optional<double> w_star = std::nullopt);

  double log_weight(double x) const;
  double weight(double x) const { return std::exp(log_weight(x)); }

  /// weight() floored at kMinPositiveWeight where the log weight is finite;
  /// exactly 0 where the target truly vanishes.
  double clamped_weight(double x) const {
    const double log_w = log_weight(x);
    if (log_w == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::max(std::exp(log_w), kMinPositiveWeight);
  }

  double kappa() const { return kappa_; }
  const Density& target() const { return target_; }
  const Density& trial() const { return trial_; }

  /// Declared supremum of target/trial (without kappa), when known.
  std::optional<double> w_star() const { return w_star_; }

 private:
  Density target_;
  Density trial_;
  double kappa_;
  std::optional<double> w_star_;
};

/// Grid search for sup_x target(x)/trial(x) (without kappa) over [lo,hi].
double sup_weight_grid(const WeightFunction& wf, double lo, double hi, double step);

/// Conditional density q(to|from) with an optional sampler for `to`.
class TransitionDensity {
 public:
  using LogDensityFn = std::function<double(double from, double to)>;
  using SamplerFn = std::function<double(double from, SplitRng&)>;

  TransitionDensity(std::string name, LogDensityFn log_density, SamplerFn sampler = nullptr);

  const std::string& name() const { return name_; }
  double log_density(double from, double to) const { return log_density_(from, to); }
  bool has_sampler() const { return static_cast<bool>(sampler_); }
  double sample(double from, SplitRng& rng) const;

 private:
  std::string name_;
  LogDensityFn log_density_;
  SamplerFn sampler_;
};

TransitionDensity random_walk_normal_proposal(double sigma);
TransitionDensity independence_proposal(Density d);
/// Row-stochastic kernel on atoms 0..k-1; rows must sum to 1 within 1e-12.
TransitionDensity discrete_kernel(std::vector<std::vector<double>> rows);

}  // namespace jumpmc
