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

#include "jumpmc/measure.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "jumpmc/numeric.hpp"

namespace jumpmc {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

Density::Density(std::string name, Support support, LogDensityFn log_density,
                 std::optional<double> normalizer, SamplerFn sampler)
    : name_(std::move(name)),
      support_(support),
      log_density_(std::move(log_density)),
      normalizer_(normalizer),
      sampler_(std::move(sampler)) {
  if (!log_density_) throw ConfigError("Density '" + name_ + "': log density is required");
  if (normalizer_ && !(*normalizer_ > 0.0)) {
    throw ConfigError("Density '" + name_ + "': normalizer must be positive");
  }
}

double Density::log_unnormalized(double x) const {
  if (!support_.contains(x)) {
    throw SupportViolation("Density '" + name_ + "': state " + std::to_string(x) +
                           " outside declared support");
  }
  return log_density_(x);
}

double Density::normalizer() const {
  if (!normalizer_) throw ConfigError("Density '" + name_ + "': no normalizer declared");
  return *normalizer_;
}

double Density::log_normalized(double x) const {
  return log_unnormalized(x) - std::log(normalizer());
}

double Density::sample(SplitRng& rng) const {
  if (!sampler_) throw ConfigError("Density '" + name_ + "': no exact sampler available");
  return sampler_(rng);
}

Density normal_density(double mu, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("normal: sigma must be positive");
  auto logpdf = [mu, sigma](double x) {
    const double z = (x - mu) / sigma;
    return -0.5 * z * z - std::log(sigma) - 0.5 * kLog2Pi;
  };
  auto sampler = [mu, sigma](SplitRng& rng) { return rng.normal(mu, sigma); };
  return Density("normal(" + std::to_string(mu) + "," + std::to_string(sigma) + ")",
                 Support::all_reals(), logpdf, 1.0, sampler);
}

Density cauchy_density(double x0, double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("cauchy: scale must be positive");
  auto logpdf = [x0, gamma](double x) {
    const double z = (x - x0) / gamma;
    return -std::log(kPi * gamma) - std::log1p(z * z);
  };
  auto sampler = [x0, gamma](SplitRng& rng) { return rng.cauchy(x0, gamma); };
  return Density("cauchy(" + std::to_string(x0) + "," + std::to_string(gamma) + ")",
                 Support::all_reals(), logpdf, 1.0, sampler);
}

Density mixture_density(std::vector<double> weights, std::vector<Density> components) {
  if (weights.empty() || weights.size() != components.size()) {
    throw ConfigError("mixture: need matching, nonempty weights and components");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ConfigError("mixture: weights must be positive");
    total += w;
  }
  std::vector<double> log_w(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] /= total;
    log_w[i] = std::log(weights[i]);
  }
  bool all_samplers = true;
  for (const Density& c : components) {
    if (c.support().is_discrete()) throw ConfigError("mixture: components must be continuous");
    all_samplers = all_samplers && c.has_sampler();
  }
  auto comps = std::make_shared<std::vector<Density>>(std::move(components));
  auto probs = std::make_shared<std::vector<double>>(weights);
  auto logs = std::make_shared<std::vector<double>>(std::move(log_w));

  auto logpdf = [comps, logs](double x) {
    std::vector<double> terms(comps->size());
    for (std::size_t i = 0; i < comps->size(); ++i) {
      terms[i] = (*logs)[i] + (*comps)[i].log_density(x);
    }
    return log_sum_exp(terms);
  };
  Density::SamplerFn sampler;
  if (all_samplers) {
    sampler = [comps, probs](SplitRng& rng) {
      const std::size_t i = rng.categorical(*probs);
      return (*comps)[i].sample(rng);
    };
  }
  return Density("mixture[" + std::to_string(comps->size()) + "]", Support::all_reals(),
                 logpdf, 1.0, sampler);
}

Density discrete_density(std::vector<double> pmf) {
  if (pmf.empty()) throw ConfigError("discrete: empty pmf");
  double total = 0.0;
  for (double p : pmf) {
    if (!(p > 0.0)) throw ConfigError("discrete: probabilities must be positive");
    total += p;
  }
  for (double& p : pmf) p /= total;
  auto probs = std::make_shared<std::vector<double>>(std::move(pmf));
  const int n = static_cast<int>(probs->size());
  auto logpdf = [probs](double x) {
    return std::log((*probs)[static_cast<std::size_t>(std::llround(x))]);
  };
  auto sampler = [probs](SplitRng& rng) {
    return static_cast<double>(rng.categorical(*probs));
  };
  return Density("discrete[" + std::to_string(n) + "]", Support::atoms(n), logpdf, 1.0,
                 sampler);
}

Density example_mixture_target() {
  return mixture_density({1.0, 1.0, 1.0}, {normal_density(0.0, 3.0), normal_density(5.0, 1.0),
                                           normal_density(15.0, 2.0)});
}

Density example_cauchy_trial() { return cauchy_density(0.0, 10.0); }

WeightFunction::WeightFunction(Density target, Density trial, double kappa,
                               std::optional<double> w_star)
    : target_(std::move(target)), trial_(std::move(trial)), kappa_(kappa), w_star_(w_star) {
  if (!(kappa_ > 0.0)) throw ConfigError("WeightFunction: kappa must be positive");
  if (w_star_ && !(*w_star_ > 0.0)) throw ConfigError("WeightFunction: w_star must be positive");
}

double WeightFunction::log_weight(double x) const {
  if (!trial_.in_support(x)) {
    throw SupportViolation("weight: state outside trial support");
  }
  const double log_g = trial_.log_density(x);
  if (!std::isfinite(log_g)) {
    throw SupportViolation("weight: trial density vanishes at the evaluated state");
  }
  const double log_pi = target_.in_support(x)
                            ? target_.log_density(x)
                            : -std::numeric_limits<double>::infinity();
  return std::log(kappa_) + log_pi - log_g;
}

double sup_weight_grid(const WeightFunction& wf, double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) throw InvalidInput("sup_weight_grid: bad grid");
  double best = 0.0;
  const double log_kappa = std::log(wf.kappa());
  for (double x = lo; x <= hi; x += step) {
    const double w = std::exp(wf.log_weight(x) - log_kappa);
    if (w > best) best = w;
  }
  return best;
}

TransitionDensity::TransitionDensity(std::string name, LogDensityFn log_density,
                                     SamplerFn sampler)
    : name_(std::move(name)), log_density_(std::move(log_density)), sampler_(std::move(sampler)) {
  if (!log_density_) throw ConfigError("TransitionDensity '" + name_ + "': log density required");
}

double TransitionDensity::sample(double from, SplitRng& rng) const {
  if (!sampler_) {
    throw ConfigError("TransitionDensity '" + name_ + "': no sampler available");
  }
  return sampler_(from, rng);
}

TransitionDensity random_walk_normal_proposal(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("rw-normal: sigma must be positive");
  auto logpdf = [sigma](double from, double to) {
    const double z = (to - from) / sigma;
    return -0.5 * z * z - std::log(sigma) - 0.5 * kLog2Pi;
  };
  auto sampler = [sigma](double from, SplitRng& rng) { return rng.normal(from, sigma); };
  return TransitionDensity("rw-normal(" + std::to_string(sigma) + ")", logpdf, sampler);
}

TransitionDensity independence_proposal(Density d) {
  auto dens = std::make_shared<Density>(std::move(d));
  auto logpdf = [dens](double, double to) { return dens->log_density(to); };
  TransitionDensity::SamplerFn sampler;
  if (dens->has_sampler()) {
    sampler = [dens](double, SplitRng& rng) { return dens->sample(rng); };
  }
  return TransitionDensity("independent(" + dens->name() + ")", logpdf, sampler);
}

TransitionDensity discrete_kernel(std::vector<std::vector<double>> rows) {
  const std::size_t k = rows.size();
  if (k == 0) throw ConfigError("discrete_kernel: empty kernel");
  for (const auto& row : rows) {
    if (row.size() != k) throw ConfigError("discrete_kernel: kernel must be square");
    double s = 0.0;
    for (double p : row) {
      if (p < 0.0) throw ConfigError("discrete_kernel: negative entry");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-12) throw ConfigError("discrete_kernel: rows must sum to 1");
  }
  auto m = std::make_shared<std::vector<std::vector<double>>>(std::move(rows));
  auto logpdf = [m](double from, double to) {
    const auto& row = (*m)[static_cast<std::size_t>(std::llround(from))];
    return std::log(row[static_cast<std::size_t>(std::llround(to))]);
  };
  auto sampler = [m](double from, SplitRng& rng) {
    const auto& row = (*m)[static_cast<std::size_t>(std::llround(from))];
    return static_cast<double>(rng.categorical(row));
  };
  return TransitionDensity("kernel[" + std::to_string(k) + "]", logpdf, sampler);
}

}  // namespace jumpmc
