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
#include <string>

#include "jumpmc/common.hpp"
#include "jumpmc/rng.hpp"

namespace jumpmc {

/// Conditional sojourn-weight distribution p(v|x) with its survival function
/// P(xi >= u | x), per-state mean, and sampler.
///
/// Conventions:
///  - deterministic: xi = mean(x) surely (point mass; density() is a
///    ModeError, survival is a step function).
///  - geometric: support {1,2,...}, success a(x), mean 1/a(x);
///    P(xi >= u|x) = (1-a)^{ceil(u)-1} for u > 0.
///  - exponential: mean m(x); P(xi >= u|x) = exp(-u/m).
///  - custom: caller supplies the pieces; a size-biased sampler (law
///    proportional to v*p(v|x)) is optional and only needed by the
///    equilibrium machinery.
class SojournLaw {
 public:
  enum class Kind { deterministic, geometric, exponential, custom };

  using StateFn = std::function<double(double)>;
  using DensityFn = std::function<double(double v, double x)>;
  using SampleFn = std::function<double(double x, SplitRng&)>;

  static SojournLaw deterministic(StateFn weight);
  static SojournLaw geometric(StateFn success);
  static SojournLaw exponential(StateFn mean);
  static SojournLaw custom(std::string name, bool discrete_weights, StateFn mean,
                           DensityFn density, DensityFn survival, SampleFn sampler,
                           SampleFn size_biased_sampler = nullptr,
                           StateFn variance = nullptr);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  /// True when weights live on {1,2,...} and paths run in discrete time.
  bool discrete_weights() const { return discrete_; }

  /// E{xi | x}.
  double mean(double x) const { return mean_(x); }

  /// p(v|x): pmf for discrete laws, density for continuous ones.
  double density(double v, double x) const;

  /// P(xi >= u | x); nonincreasing in u with survival(0+, x) = 1
  /// (continuous) or survival(1, x) = 1 (discrete).
  double survival(double u, double x) const;

  /// density/survival at v; closed form (constant in v) for the geometric
  /// and exponential families. Throws ModeError for point-mass laws.
  double hazard(double v, double x) const;

  double sample(double x, SplitRng& rng) const { return sampler_(x, rng); }

  /// Var{xi | x} in closed form, when the law knows it.
  std::optional<double> variance(double x) const;

  bool has_size_biased_sampler() const { return static_cast<bool>(size_biased_); }
  /// Draw from the law proportional to v*p(v|x).
  double sample_size_biased(double x, SplitRng& rng) const;

  /// Per-state geometric success (geometric laws only).
  double geometric_success(double x) const;

 private:
  SojournLaw() = default;

  Kind kind_ = Kind::custom;
  std::string name_;
  bool discrete_ = false;
  StateFn mean_;
  StateFn success_;    // geometric only
  DensityFn density_;
  DensityFn survival_;
  SampleFn sampler_;
  SampleFn size_biased_;
  StateFn variance_;   // nullable for custom laws
};

}  // namespace jumpmc
