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

#include <cmath>
#include <numeric>
#include <vector>

#include "jumpmc/diagnostics.hpp"
#include "support/benchmarks.hpp"
#include "support/oracles.hpp"

using namespace jumpmc;
using namespace jumpmc_test;

namespace {

DiscreteBenchmark geo_benchmark() {
  return DiscreteBenchmark{kBenchTrial, kUniformProposal3, geo_bench_law(), kGeoKappa};
}

}  // namespace

TEST_CASE("exact limit: constant sojourns leave the base distribution unchanged") {
  const std::vector<double> g{0.1, 0.6, 0.3};
  const std::vector<double> mean{2.5, 2.5, 2.5};
  const std::vector<double> out = exact_limit_discrete(g, mean);
  for (std::size_t i = 0; i < 3; ++i) CHECK(out[i] == doctest::Approx(g[i]));
}

TEST_CASE("exact limit reproduces the benchmark construction") {
  const std::vector<double> mean{0.6, 0.9, 1.5};
  const std::vector<double> out = exact_limit_discrete(kBenchTrial, mean);
  CHECK(out[0] == doctest::Approx(0.2));
  CHECK(out[1] == doctest::Approx(0.3));
  CHECK(out[2] == doctest::Approx(0.5));
}

TEST_CASE("exact limit two-state example and error handling") {
  const std::vector<double> g{0.5, 0.5};
  const std::vector<double> mean{1.0, 3.0};
  const std::vector<double> out = exact_limit_discrete(g, mean);
  CHECK(out[0] == doctest::Approx(0.25));
  CHECK(out[1] == doctest::Approx(0.75));
  const std::vector<double> bad{1.0};
  CHECK_THROWS_AS(exact_limit_discrete(g, bad), InvalidInput);
}

TEST_CASE("dynamic program at t=0 returns the initial distribution") {
  const DiscreteMarginal m = brute_force_marginal_discrete(geo_benchmark(), 0);
  for (std::size_t s = 0; s < 3; ++s) CHECK(m.pmf[s] == doctest::Approx(kBenchTrial[s]));
  CHECK(m.truncated_mass < 1e-13);
}

TEST_CASE("unit deterministic sojourns reduce the process to the embedded chain") {
  DiscreteBenchmark bench{
      {1.0, 0.0, 0.0},  // start surely in state 0 (tiny positive entries not needed by the DP)
      {{0.1, 0.6, 0.3}, {0.5, 0.25, 0.25}, {0.3, 0.3, 0.4}},
      SojournLaw::deterministic([](double) { return 1.0; }),
      1.0};
  const DiscreteMarginal one = brute_force_marginal_discrete(bench, 1);
  CHECK(one.pmf[0] == doctest::Approx(0.1));
  CHECK(one.pmf[1] == doctest::Approx(0.6));
  CHECK(one.pmf[2] == doctest::Approx(0.3));
  // Two steps: row of the squared kernel.
  const DiscreteMarginal two = brute_force_marginal_discrete(bench, 2);
  CHECK(two.pmf[0] == doctest::Approx(0.1 * 0.1 + 0.6 * 0.5 + 0.3 * 0.3));
}

TEST_CASE("dynamic program matches simulation at t=10 on the geometric benchmark") {
  const DiscreteMarginal dp = brute_force_marginal_discrete(geo_benchmark(), 10);
  constexpr long kReplicates = 1000000;
  SplitRng root(61);
  std::vector<long> counts(3, 0);
  for (long r = 0; r < kReplicates; ++r) {
    SplitRng rng = root.split(static_cast<std::uint64_t>(r));
    GeoBenchStream stream;
    double epoch = 0.0;
    WeightedPoint p = stream.next(rng);
    while (epoch + p.weight <= 10.0) {
      epoch += p.weight;
      p = stream.next(rng);
    }
    ++counts[static_cast<std::size_t>(p.state)];
  }
  for (std::size_t s = 0; s < 3; ++s) {
    const double freq = static_cast<double>(counts[s]) / kReplicates;
    const double se = std::sqrt(dp.pmf[s] * (1.0 - dp.pmf[s]) / kReplicates);
    CHECK(std::abs(freq - dp.pmf[s]) <= 4.0 * se);
  }
}

TEST_CASE("dynamic program converges to the exact limit") {
  const DiscreteMarginal dp = brute_force_marginal_discrete(geo_benchmark(), 200);
  const std::vector<double> means{5.0, 2.0, 1.25};
  const std::vector<double> limit = exact_limit_discrete(kBenchTrial, means);
  CHECK(half_l1(dp.pmf, limit) <= 1e-6);
  for (std::size_t s = 0; s < 3; ++s) CHECK(limit[s] == doctest::Approx(kGeoTarget[s]));
}

TEST_CASE("dynamic program rejects continuous sojourn laws") {
  DiscreteBenchmark bench{kBenchTrial, kUniformProposal3,
                          SojournLaw::exponential([](double) { return 1.0; }), 1.0};
  CHECK_THROWS_AS(brute_force_marginal_discrete(bench, 5), ModeError);
}

TEST_CASE("self-distance of exact samples stays within the bootstrap error") {
  const std::vector<double> pmf{0.2, 0.3, 0.5};
  SplitRng rng(62);
  std::vector<double> samples(100000);
  const Density d = discrete_density(pmf);
  for (double& s : samples) s = d.sample(rng);
  SplitRng boot(63);
  const TvEstimate est = estimate_tv(samples, pmf, boot);
  CHECK(est.tv <= 3.0 * est.mc_error);
}

TEST_CASE("point mass versus a uniform pair has distance one half") {
  const std::vector<double> pmf{0.5, 0.5};
  std::vector<double> samples(2000, 0.0);
  SplitRng boot(64);
  const TvEstimate est = estimate_tv(samples, pmf, boot);
  CHECK(est.tv == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("binned TV is invariant under cell permutation and zero-cell merging") {
  SplitRng rng(65);
  const std::vector<double> pmf{0.15, 0.35, 0.5};
  const Density d = discrete_density(pmf);
  std::vector<double> samples(50000);
  for (double& s : samples) s = d.sample(rng);

  SplitRng boot_a(66);
  const double base = estimate_tv(samples, pmf, boot_a).tv;

  // Permute the atom labels: s -> perm[s], so cell perm[s] inherits pmf[s].
  std::vector<double> permuted(samples.size());
  const std::vector<std::size_t> perm{2, 0, 1};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    permuted[i] = static_cast<double>(perm[static_cast<std::size_t>(samples[i])]);
  }
  const std::vector<double> pmf_perm{0.35, 0.5, 0.15};
  SplitRng boot_b(67);
  CHECK(estimate_tv(permuted, pmf_perm, boot_b).tv == doctest::Approx(base).epsilon(1e-12));

  // Append zero-probability-and-zero-count cells; the statistic is unmoved.
  const std::vector<double> padded_pmf{0.15, 0.35, 0.5, 0.0, 0.0};
  SplitRng boot_c(68);
  CHECK(estimate_tv(samples, padded_pmf, boot_c).tv == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("estimate_tv enforces its sample-size precondition") {
  const std::vector<double> pmf{1.0};
  const std::vector<double> few(999, 0.0);
  SplitRng boot(69);
  CHECK_THROWS_AS((void)estimate_tv(few, pmf, boot), InvalidInput);
}

TEST_CASE("continuous reference bin probabilities sum to one") {
  const Density target = example_mixture_target();
  const BinSpec bins{-15.0, 25.0, 60};
  const std::vector<double> probs = reference_bin_probs(target, bins);
  CHECK(probs.size() == 62);
  CHECK(std::accumulate(probs.begin(), probs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-8));
  // The declared range holds nearly all mass, so the overflow cells are thin.
  CHECK(probs.front() < 1e-4);
  CHECK(probs.back() < 1e-4);
}

TEST_CASE("default binning covers all but the requested tail mass") {
  const Density target = example_mixture_target();
  const BinSpec bins = default_bin_spec(target, 60, 1e-4);
  const std::vector<double> probs = reference_bin_probs(target, bins);
  CHECK(probs.front() <= 1e-4);
  CHECK(probs.back() <= 1e-4);
  CHECK(probs.front() + probs.back() <= 2e-4);
}

TEST_CASE("bound curves evaluate their closed forms") {
  const std::vector<double> t0{0.0};
  for (BoundKind kind : {BoundKind::doeblin, BoundKind::mh_independence, BoundKind::sz,
                         BoundKind::gasemyr}) {
    BoundParams p{1.0, 2.0, 6.905};
    CHECK(bound_curve(kind, p, t0)[0] == doctest::Approx(1.0));
  }

  BoundParams example{1.0, 1.0, 6.905};
  const std::vector<double> t{31.8};
  const double b = bound_curve(BoundKind::doeblin, example, t)[0];
  CHECK(b == doctest::Approx(std::exp(-31.8 / 6.905)).epsilon(1e-12));
  CHECK(b == doctest::Approx(0.009998117677899945).epsilon(1e-9));
  CHECK(b < 0.01);

  BoundParams sz_unit{1.0, 1.0, 1.0};  // kappa * w* = 1
  CHECK(bound_curve(BoundKind::sz, sz_unit, std::vector<double>{3.0})[0] ==
        doctest::Approx(0.125));

  BoundParams mh{1.0, 1.0, 1.5};
  CHECK(bound_curve(BoundKind::mh_independence, mh, std::vector<double>{2.0})[0] ==
        doctest::Approx(1.0 / 9.0));

  BoundParams degenerate{1.0, 0.5, 1.5};  // kappa*w* = 0.75 <= 1
  CHECK_THROWS_AS(bound_curve(BoundKind::gasemyr, degenerate, t0), InvalidInput);
  BoundParams bad_beta{1.5, 1.0, 1.0};
  CHECK_THROWS_AS(bound_curve(BoundKind::doeblin, bad_beta, t0), InvalidInput);
}

TEST_CASE("mh_kernel_discrete is a stochastic matrix preserving the target") {
  const std::vector<std::vector<double>> kernel =
      mh_kernel_discrete(kBenchTarget, kUniformProposal3);
  for (std::size_t y = 0; y < 3; ++y) {
    CHECK(std::accumulate(kernel[y].begin(), kernel[y].end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  for (std::size_t z = 0; z < 3; ++z) {
    double mass = 0.0;
    for (std::size_t y = 0; y < 3; ++y) mass += kBenchTarget[y] * kernel[y][z];
    CHECK(mass == doctest::Approx(kBenchTarget[z]).epsilon(1e-14));
  }
}

TEST_CASE("run_replicates: single replicate, determinism, worker independence") {
  ReplicateSpec spec;
  spec.mode = TimeMode::discrete;
  spec.make_stream = [](SplitRng&) -> StreamPtr { return std::make_unique<GeoBenchStream>(); };
  const std::vector<double> times{0.0, 3.0, 11.0};

  const auto one = run_replicates(spec, times, 1, 77);
  CHECK(one.size() == 3);
  CHECK(one[0].size() == 1);

  const auto a = run_replicates(spec, times, 500, 78, 1);
  const auto b = run_replicates(spec, times, 500, 78, 1);
  const auto c = run_replicates(spec, times, 500, 78, 4);
  CHECK(a == b);
  CHECK(a == c);
  const auto other_seed = run_replicates(spec, times, 500, 79, 1);
  CHECK(a != other_seed);
}

TEST_CASE("run_replicates agrees with explicit path construction") {
  ReplicateSpec spec;
  spec.mode = TimeMode::discrete;
  spec.make_stream = [](SplitRng&) -> StreamPtr { return std::make_unique<GeoBenchStream>(); };
  const std::vector<double> times{0.0, 2.0, 9.0, 25.0};
  const std::uint64_t seed = 80;
  const auto grid = run_replicates(spec, times, 50, seed);

  for (long r = 0; r < 50; ++r) {
    SplitRng stream_rng = SplitRng(seed).split(static_cast<std::uint64_t>(r)).split(1);
    GeoBenchStream stream;
    JumpPath path = JumpPath::build({}, TimeMode::discrete);
    extend_path_past(path, stream, stream_rng, times.back());
    for (std::size_t k = 0; k < times.size(); ++k) {
      REQUIRE(grid[k][static_cast<std::size_t>(r)] == path.state_at(times[k]));
    }
  }
}

TEST_CASE("replicate errors carry the replicate index") {
  ReplicateSpec spec;
  spec.mode = TimeMode::continuous;
  spec.make_stream = [](SplitRng&) -> StreamPtr {
    struct Broken final : WeightedStream {
      WeightedPoint next(SplitRng&) override { throw Error("sampler exploded"); }
      const StreamInfo& info() const override { return info_; }
      StreamInfo info_{"broken", 1.0, TimeMode::continuous};
    };
    return std::make_unique<Broken>();
  };
  const std::vector<double> times{1.0};
  try {
    (void)run_replicates(spec, times, 3, 81);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("replicate") != std::string::npos);
    CHECK(std::string(e.what()).find("sampler exploded") != std::string::npos);
  }
}

TEST_CASE("TvReport CSV layout") {
  TvReport report;
  report.times = {1.0, 2.0};
  report.tv = {0.25, 0.125};
  report.mc_error = {0.01, 0.005};
  std::ostringstream out;
  report.write_csv(out);
  CHECK(out.str() ==
        "time,tv,bound,mc_error\n"
        "1,0.25,,0.01\n"
        "2,0.125,,0.005\n");
  report.bound = {0.5, 0.25};
  std::ostringstream with_bound;
  report.write_csv(with_bound);
  CHECK(with_bound.str() ==
        "time,tv,bound,mc_error\n"
        "1,0.25,0.5,0.01\n"
        "2,0.125,0.25,0.005\n");
}
