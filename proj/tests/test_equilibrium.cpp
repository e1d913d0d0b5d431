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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "jumpmc/equilibrium.hpp"
#include "jumpmc/samplers.hpp"
#include "support/benchmarks.hpp"
#include "support/oracles.hpp"

using namespace jumpmc;
using namespace jumpmc_test;

TEST_CASE("deterministic excess life is uniform on (0, w)") {
  const SojournLaw det = SojournLaw::deterministic([](double) { return 4.0; });
  SplitRng rng(41);
  constexpr long kN = 100000;
  std::vector<double> vs(kN);
  for (double& v : vs) {
    v = excess_sojourn_sample(det, 0.0, rng);
    REQUIRE(v > 0.0);
    REQUIRE(v < 4.0);
  }
  const MeanSe ms = mean_se(vs);
  CHECK(std::abs(ms.mean - 2.0) <= 4.0 * ms.se);
  std::sort(vs.begin(), vs.end());
  std::vector<double> cdf(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) cdf[i] = vs[i] / 4.0;
  CHECK(ks_p_value(ks_statistic(cdf), vs.size()) >= 1e-4);
}

TEST_CASE("exponential excess life is again exponential (memorylessness)") {
  const SojournLaw expo = SojournLaw::exponential([](double) { return 1.0; });
  SplitRng rng(42);
  constexpr long kN = 100000;
  std::vector<double> vs(kN);
  for (double& v : vs) v = excess_sojourn_sample(expo, 0.0, rng);
  std::sort(vs.begin(), vs.end());
  std::vector<double> cdf(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) cdf[i] = 1.0 - std::exp(-vs[i]);
  CHECK(ks_p_value(ks_statistic(cdf), vs.size()) >= 1e-4);
}

TEST_CASE("geometric excess life matches survival/mean cell by cell") {
  const double a = 0.5;
  const SojournLaw geo = SojournLaw::geometric([a](double) { return a; });
  SplitRng rng(43);
  constexpr long kN = 100000;
  std::vector<long> counts(12, 0);
  for (long i = 0; i < kN; ++i) {
    const double v = excess_sojourn_sample(geo, 0.0, rng);
    REQUIRE(std::floor(v) == v);
    REQUIRE(v >= 1.0);
    ++counts[std::min<std::size_t>(11, static_cast<std::size_t>(v) - 1)];
  }
  // P(V = k) = survival(k)/mean = 0.5^(k-1)/2, which is again the geometric.
  for (int k = 1; k <= 10; ++k) {
    const double expect = std::pow(0.5, k - 1) / 2.0;
    const double freq = static_cast<double>(counts[k - 1]) / kN;
    const double se = std::sqrt(expect * (1.0 - expect) / kN);
    CHECK(std::abs(freq - expect) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("custom law without size-biased sampler is unsupported") {
  const SojournLaw custom = SojournLaw::custom(
      "opaque", false, [](double) { return 1.0; }, [](double, double) { return 1.0; },
      [](double, double) { return 1.0; },
      [](double, SplitRng& rng) { return rng.uniform01(); });
  SplitRng rng(44);
  CHECK_THROWS_AS((void)excess_sojourn_sample(custom, 0.0, rng), ConfigError);
}

TEST_CASE("hazard floor closed forms") {
  const SojournLaw c25 = SojournLaw::geometric([](double) { return 0.25; });
  const std::vector<double> one_state{0.0};
  CHECK(hazard_floor(c25, one_state).epsilon_star == doctest::Approx(0.25));

  const SojournLaw expo =
      SojournLaw::exponential([](double x) { return x == 0.0 ? 6.905 : 1.0; });
  const std::vector<double> two{0.0, 1.0};
  CHECK(hazard_floor(expo, two).epsilon_star == doctest::Approx(1.0 / 6.905));

  const std::vector<double> atoms{0.0, 1.0, 2.0};
  CHECK(hazard_floor(geo_bench_law(), atoms).epsilon_star == doctest::Approx(0.2));

  const SojournLaw det = SojournLaw::deterministic([](double) { return 1.0; });
  CHECK_THROWS_AS(hazard_floor(det, atoms), ConfigError);
}

TEST_CASE("custom laws get a numeric grid floor, or an error when it vanishes") {
  // A discrete law on {1,...,6} with increasing hazard; the grid infimum is
  // the hazard at v = 1.
  auto pmf = [](double v, double) { return v >= 1.0 && v <= 6.0 ? 1.0 / 6.0 : 0.0; };
  auto surv = [](double u, double) {
    if (u <= 1.0) return 1.0;
    if (u > 6.0) return 0.0;
    return (7.0 - std::ceil(u)) / 6.0;
  };
  const SojournLaw die = SojournLaw::custom(
      "die", true, [](double) { return 3.5; }, pmf, surv,
      [](double, SplitRng& rng) { return std::floor(rng.uniform(0.0, 6.0)) + 1.0; });
  const std::vector<double> states{0.0};
  const std::vector<double> weights{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  const HazardFloor floor = hazard_floor(die, states, weights);
  CHECK(floor.epsilon_star == doctest::Approx(1.0 / 6.0));
  CHECK_FALSE(floor.closed_form);
  CHECK_THROWS_AS(hazard_floor(die, states), InvalidInput);  // needs weight probes

  // Vanishing hazard on the probe grid violates the bounded-hazard premise.
  const SojournLaw heavy = SojournLaw::custom(
      "heavy", false, [](double) { return 1.0; },
      [](double v, double) { return v > 0.0 ? 1.0 / ((1.0 + v) * (1.0 + v)) : 0.0; },
      [](double u, double) { return u <= 0.0 ? 1.0 : 1.0 / (1.0 + u); },
      [](double, SplitRng& rng) { return 1.0 / rng.uniform01() - 1.0; });
  const std::vector<double> far{1e9};
  CHECK(hazard_floor(heavy, states, far).epsilon_star < 1e-8);
  const std::vector<double> zero_hazard{1e308};
  CHECK_THROWS_AS(hazard_floor(heavy, states, zero_hazard), ConfigError);
}

TEST_CASE("constant-hazard exact start accepts the first draw") {
  const SojournLaw geo = SojournLaw::geometric([](double) { return 0.3; });
  const std::vector<double> atoms{0.0, 1.0, 2.0};
  const HazardFloor floor = hazard_floor(geo, atoms);
  auto joint = [&geo](SplitRng& rng) -> WeightedPoint {
    const double x = static_cast<double>(rng.categorical(kBenchTrial));
    return {x, geo.sample(x, rng)};
  };
  SplitRng rng(45);
  for (int i = 0; i < 200; ++i) {
    const ExactStartResult r = exact_start(joint, geo, floor, rng);
    CHECK(r.start.trials_used == 1);
    CHECK(r.start.tau == 0.0);
    CHECK(r.consumed.empty());
  }
}

TEST_CASE("an inflated floor is detected") {
  const SojournLaw geo = geo_bench_law();
  HazardFloor bad;
  bad.epsilon_star = 0.5;  // true floor is 0.2
  auto joint = [&geo](SplitRng& rng) -> WeightedPoint {
    const double x = static_cast<double>(rng.categorical(kBenchTrial));
    return {x, geo.sample(x, rng)};
  };
  SplitRng rng(46);
  CHECK_THROWS_AS((void)exact_start(joint, geo, bad, rng), ConfigError);
}

TEST_CASE("exact start on the geometric benchmark: trials and acceptance law") {
  const SojournLaw law = geo_bench_law();
  const std::vector<double> atoms{0.0, 1.0, 2.0};
  const HazardFloor floor = hazard_floor(law, atoms);
  CHECK(floor.epsilon_star == doctest::Approx(0.2));
  const double p_accept = kGeoKappa * floor.epsilon_star;  // 0.55

  auto joint = [&law](SplitRng& rng) -> WeightedPoint {
    const double x = static_cast<double>(rng.categorical(kBenchTrial));
    return {x, law.sample(x, rng)};
  };

  SplitRng root(47);
  constexpr long kRuns = 20000;
  std::vector<double> trials(kRuns);
  std::vector<long> accepted_state(3, 0);
  for (long r = 0; r < kRuns; ++r) {
    SplitRng rng = root.split(static_cast<std::uint64_t>(r));
    const ExactStartResult res = exact_start(joint, law, floor, rng);
    trials[static_cast<std::size_t>(r)] = static_cast<double>(res.start.trials_used);
    ++accepted_state[static_cast<std::size_t>(res.start.initial_state)];
    // tau is the sum of the rejected weights.
    double tau = 0.0;
    for (const WeightedPoint& p : res.consumed) tau += p.weight;
    REQUIRE(res.start.tau == doctest::Approx(tau).epsilon(1e-12));
  }
  const MeanSe ms = mean_se(trials);
  CHECK(std::abs(ms.mean - 1.0 / p_accept) <= 4.0 * ms.se);
  // Accepted states follow the implied target.
  CHECK(chi_square_statistic(accepted_state, kGeoTarget) < chi2_quantile_df2(0.999));
}

TEST_CASE("stationary start keeps the benchmark process at its target for all times") {
  const Density target = discrete_density(kGeoTarget);
  const SojournLaw law = geo_bench_law();
  SplitRng root(48);
  constexpr long kRuns = 20000;
  const std::vector<long> horizons{0, 1, 2, 5};
  std::vector<std::vector<long>> counts(horizons.size(), std::vector<long>(3, 0));
  for (long r = 0; r < kRuns; ++r) {
    SplitRng rng = root.split(static_cast<std::uint64_t>(r));
    const EquilibriumStart start = stationary_start(target, law, rng);
    CHECK(start.tau == 0.0);
    JumpPath path = JumpPath::build({}, TimeMode::discrete);
    path.append({start.initial_state, start.initial_weight});
    GeoBenchStream stream;
    extend_path_past(path, stream, rng, 5.0);
    for (std::size_t k = 0; k < horizons.size(); ++k) {
      ++counts[k][static_cast<std::size_t>(path.state_at(static_cast<double>(horizons[k])))];
    }
  }
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    for (std::size_t s = 0; s < 3; ++s) {
      const double freq = static_cast<double>(counts[k][s]) / kRuns;
      const double se = std::sqrt(kGeoTarget[s] * (1.0 - kGeoTarget[s]) / kRuns);
      CHECK(std::abs(freq - kGeoTarget[s]) <= 4.0 * se);
    }
  }
}

TEST_CASE("stationary start requires an exact target sampler") {
  const Density no_sampler("d", Support::all_reals(), [](double) { return 0.0; }, 1.0);
  const SojournLaw det = SojournLaw::deterministic([](double) { return 1.0; });
  SplitRng rng(49);
  CHECK_THROWS_AS((void)stationary_start(no_sampler, det, rng), ConfigError);
}

TEST_CASE("moment bounds are tight at the worst state and hold on the benchmark") {
  SplitRng rng(50);

  // Geometric success 0.5: E{xi} = 2 equals the bound 1/eps.
  const SojournLaw half = SojournLaw::geometric([](double) { return 0.5; });
  const std::vector<double> one{0.0};
  const HazardFloor f_half = hazard_floor(half, one);
  const MomentBoundReport r_half = moment_bound_check(half, f_half, 1, one, 1.0, rng);
  REQUIRE(r_half.rows.size() == 1);
  CHECK(r_half.rows[0].bound == doctest::Approx(2.0));
  CHECK(r_half.all_ok);

  // Exponential mean m: E{xi^2} = 2m^2 equals 2/eps^2.
  const SojournLaw expo = SojournLaw::exponential([](double) { return 3.0; });
  const HazardFloor f_expo = hazard_floor(expo, one);
  const MomentBoundReport r_expo = moment_bound_check(expo, f_expo, 2, one, 1.0, rng);
  CHECK(r_expo.rows[1].bound == doctest::Approx(18.0));
  CHECK(r_expo.all_ok);

  // Benchmark: all m <= 4 bounds hold with eps = 0.2, and the mean-weight
  // cap 1/(kappa*eps) is attained exactly.
  const std::vector<double> atoms{0.0, 1.0, 2.0};
  const SojournLaw law = geo_bench_law();
  const HazardFloor floor = hazard_floor(law, atoms);
  const MomentBoundReport report = moment_bound_check(law, floor, 4, atoms, kGeoKappa, rng);
  CHECK(report.all_ok);
  CHECK(report.weight_ok);
  CHECK(report.max_weight == doctest::Approx(report.weight_cap).epsilon(1e-12));
  // Closed-form third moment at the worst state: (6 - 6a + a^2)/a^3 = 605.
  for (const MomentBoundRow& row : report.rows) {
    if (row.state == 0.0 && row.m == 3) {
      CHECK(std::abs(row.empirical - 605.0) <= 6.0 * row.stderr_);
      CHECK(row.bound == doctest::Approx(6.0 / 0.008));
    }
  }
}
