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
#include <cstdint>
#include <span>

#include "jumpmc/common.hpp"

namespace jumpmc {

/// SplitMix64 finalizer. Bijective 64-bit mixing function, also used to
/// derive child stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Splittable pseudo-random stream (SplitMix64 core).
///
/// Every stochastic operation in the library takes a SplitRng by reference;
/// nothing owns global randomness. Independent streams are derived with
/// split(key): replicated experiments use
///
///   root = SplitRng(seed); replicate = root.split(r); role = replicate.split(k);
///
/// so results are reproducible and independent of scheduling order.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  /// Derive an independent child stream. Deterministic: depends only on the
  /// seed this stream was created with and on `key`, not on draws made.
  SplitRng split(std::uint64_t key) const {
    return SplitRng(mix64(seed_ + 0x9E3779B97F4A7C15ULL * (key + 1)));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform on the open interval (0,1); safe as a log() argument.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller (no cached spare; streams stay stateless
  /// apart from the counter).
  double normal() {
    const double u = uniform01();
    const double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  double exponential_mean(double mean) { return -mean * std::log(uniform01()); }

  double cauchy(double x0, double gamma) {
    return x0 + gamma * std::tan(3.14159265358979323846 * (uniform01() - 0.5));
  }

  /// Geometric on {1,2,...} with success probability a: P(k) = a(1-a)^{k-1}.
  std::int64_t geometric1(double a) {
    if (a <= 0.0 || a > 1.0) throw InvalidInput("geometric1: success probability must be in (0,1]");
    if (a == 1.0) return 1;
    return 1 + static_cast<std::int64_t>(std::floor(std::log(uniform01()) / std::log1p(-a)));
  }

  /// Geometric on {0,1,...} with success probability s: P(k) = s(1-s)^k.
  std::int64_t geometric0(double s) {
    if (s <= 0.0 || s > 1.0) throw InvalidInput("geometric0: success probability must be in (0,1]");
    if (s == 1.0) return 0;
    return static_cast<std::int64_t>(std::floor(std::log(uniform01()) / std::log1p(-s)));
  }

  /// Gamma with shape 2 and the given scale (sum of two exponentials).
  double gamma_shape2(double scale) {
    return -scale * (std::log(uniform01()) + std::log(uniform01()));
  }

  /// Index draw from a probability vector by CDF inversion.
  std::size_t categorical(std::span<const double> pmf) {
    const double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pmf.size(); ++i) {
      acc += pmf[i];
      if (u < acc) return i;
    }
    return pmf.empty() ? throw InvalidInput("categorical: empty pmf") : pmf.size() - 1;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace jumpmc
