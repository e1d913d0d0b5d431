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

#include "jumpmc/sojourn.hpp"

#include <cmath>

namespace jumpmc {

namespace {

double require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("SojournLaw: ") + what + " must be positive and finite");
  }
  return v;
}

double require_success(double a) {
  if (!(a > 0.0) || a > 1.0) {
    throw ConfigError("SojournLaw: geometric success must lie in (0,1]");
  }
  return a;
}

}  // namespace

SojournLaw SojournLaw::deterministic(StateFn weight) {
  if (!weight) throw ConfigError("SojournLaw: weight function required");
  SojournLaw law;
  law.kind_ = Kind::deterministic;
  law.name_ = "deterministic";
  law.discrete_ = false;
  law.mean_ = [weight](double x) { return require_positive(weight(x), "deterministic weight"); };
  law.density_ = nullptr;
  law.survival_ = [weight](double u, double x) {
    return u <= require_positive(weight(x), "deterministic weight") ? 1.0 : 0.0;
  };
  law.sampler_ = [weight](double x, SplitRng&) {
    return require_positive(weight(x), "deterministic weight");
  };
  law.size_biased_ = nullptr;
  law.variance_ = [](double) { return 0.0; };
  return law;
}

SojournLaw SojournLaw::geometric(StateFn success) {
  if (!success) throw ConfigError("SojournLaw: success function required");
  SojournLaw law;
  law.kind_ = Kind::geometric;
  law.name_ = "geometric";
  law.discrete_ = true;
  law.success_ = [success](double x) { return require_success(success(x)); };
  const StateFn a_of = law.success_;
  law.mean_ = [a_of](double x) { return 1.0 / a_of(x); };
  law.density_ = [a_of](double v, double x) {
    if (v < 1.0 || std::floor(v) != v) return 0.0;
    const double a = a_of(x);
    return a * std::pow(1.0 - a, v - 1.0);
  };
  law.survival_ = [a_of](double u, double x) {
    if (u <= 1.0) return 1.0;
    const double a = a_of(x);
    return std::pow(1.0 - a, std::ceil(u) - 1.0);
  };
  law.sampler_ = [a_of](double x, SplitRng& rng) {
    return static_cast<double>(rng.geometric1(a_of(x)));
  };
  // Size-biased variate: q(t) ~ t*a^2*(1-a)^{t-1} is a sum of two geometrics
  // minus one.
  law.size_biased_ = [a_of](double x, SplitRng& rng) {
    const double a = a_of(x);
    return static_cast<double>(rng.geometric1(a) + rng.geometric1(a) - 1);
  };
  law.variance_ = [a_of](double x) {
    const double a = a_of(x);
    return (1.0 - a) / (a * a);
  };
  return law;
}

SojournLaw SojournLaw::exponential(StateFn mean) {
  if (!mean) throw ConfigError("SojournLaw: mean function required");
  SojournLaw law;
  law.kind_ = Kind::exponential;
  law.name_ = "exponential";
  law.discrete_ = false;
  const StateFn m_of = [mean](double x) { return require_positive(mean(x), "exponential mean"); };
  law.mean_ = m_of;
  law.density_ = [m_of](double v, double x) {
    if (v < 0.0) return 0.0;
    const double m = m_of(x);
    return std::exp(-v / m) / m;
  };
  law.survival_ = [m_of](double u, double x) {
    return u <= 0.0 ? 1.0 : std::exp(-u / m_of(x));
  };
  law.sampler_ = [m_of](double x, SplitRng& rng) { return rng.exponential_mean(m_of(x)); };
  // Size-biased variate: gamma with shape 2.
  law.size_biased_ = [m_of](double x, SplitRng& rng) { return rng.gamma_shape2(m_of(x)); };
  law.variance_ = [m_of](double x) {
    const double m = m_of(x);
    return m * m;
  };
  return law;
}

SojournLaw SojournLaw::custom(std::string name, bool discrete_weights, StateFn mean,
                              DensityFn density, DensityFn survival, SampleFn sampler,
                              SampleFn size_biased_sampler, StateFn variance) {
  if (!mean || !density || !survival || !sampler) {
    throw ConfigError("SojournLaw: custom law needs mean, density, survival, sampler");
  }
  SojournLaw law;
  law.kind_ = Kind::custom;
  law.name_ = std::move(name);
  law.discrete_ = discrete_weights;
  law.mean_ = std::move(mean);
  law.density_ = std::move(density);
  law.survival_ = std::move(survival);
  law.sampler_ = std::move(sampler);
  law.size_biased_ = std::move(size_biased_sampler);
  law.variance_ = std::move(variance);
  return law;
}

double SojournLaw::density(double v, double x) const {
  if (!density_) {
    throw ModeError("SojournLaw '" + name_ + "': point-mass law has no density");
  }
  return density_(v, x);
}

double SojournLaw::survival(double u, double x) const { return survival_(u, x); }

double SojournLaw::hazard(double v, double x) const {
  switch (kind_) {
    case Kind::geometric:
      return success_(x);
    case Kind::exponential:
      return 1.0 / mean_(x);
    default:
      return density(v, x) / survival(v, x);
  }
}

std::optional<double> SojournLaw::variance(double x) const {
  if (!variance_) return std::nullopt;
  return variance_(x);
}

double SojournLaw::sample_size_biased(double x, SplitRng& rng) const {
  if (!size_biased_) {
    throw ConfigError("SojournLaw '" + name_ + "': no size-biased sampler supplied");
  }
  return size_biased_(x, rng);
}

double SojournLaw::geometric_success(double x) const {
  if (kind_ != Kind::geometric) {
    throw ModeError("SojournLaw '" + name_ + "': not a geometric law");
  }
  return success_(x);
}

}  // namespace jumpmc
