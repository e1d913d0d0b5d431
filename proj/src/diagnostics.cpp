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

#include "jumpmc/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include "jumpmc/numeric.hpp"

namespace jumpmc {

std::vector<double> exact_limit_discrete(std::span<const double> g_pmf,
                                         std::span<const double> mean_sojourn) {
  if (g_pmf.size() != mean_sojourn.size() || g_pmf.empty()) {
    throw InvalidInput("exact_limit_discrete: dimension mismatch");
  }
  std::vector<double> out(g_pmf.size());
  double total = 0.0;
  for (std::size_t i = 0; i < g_pmf.size(); ++i) {
    if (!(g_pmf[i] > 0.0) || !(mean_sojourn[i] > 0.0)) {
      throw InvalidInput("exact_limit_discrete: entries must be positive");
    }
    out[i] = g_pmf[i] * mean_sojourn[i];
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

DiscreteMarginal brute_force_marginal_discrete(const DiscreteBenchmark& benchmark, long t) {
  const std::size_t k = benchmark.initial_pmf.size();
  if (k == 0 || benchmark.kernel.size() != k) {
    throw InvalidInput("brute_force_marginal_discrete: dimension mismatch");
  }
  if (!benchmark.law.discrete_weights() &&
      benchmark.law.kind() != SojournLaw::Kind::deterministic) {
    throw ModeError("brute_force_marginal_discrete: integer sojourns required");
  }
  if (t < 0) throw InvalidInput("brute_force_marginal_discrete: t must be nonnegative");

  // Sojourn pmf per state, truncated where the tail falls below 1e-14.
  constexpr double kTail = 1e-14;
  std::vector<std::vector<double>> sojourn_pmf(k);
  double truncated = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    const double x = static_cast<double>(s);
    if (benchmark.law.kind() == SojournLaw::Kind::deterministic) {
      const double w = benchmark.law.mean(x);
      if (std::floor(w) != w || !(w >= 1.0)) {
        throw ModeError("brute_force_marginal_discrete: deterministic weights must be integers");
      }
      sojourn_pmf[s].assign(static_cast<std::size_t>(w) + 1, 0.0);
      sojourn_pmf[s][static_cast<std::size_t>(w)] = 1.0;
    } else {
      std::vector<double>& pmf = sojourn_pmf[s];
      pmf.push_back(0.0);  // length 0 unused
      double mass = 0.0;
      for (long v = 1;; ++v) {
        const double p = benchmark.law.density(static_cast<double>(v), x);
        pmf.push_back(p);
        mass += p;
        if (benchmark.law.survival(static_cast<double>(v + 1), x) < kTail) break;
        if (v > 1000000) throw InvalidInput("brute_force_marginal_discrete: sojourn tail too heavy");
      }
      truncated = std::max(truncated, 1.0 - mass);
      for (double& p : pmf) p /= mass;  // renormalize the truncated pmf
    }
  }

  // joint[s][r]: probability of sitting in state s with r further time units
  // (including the current one) before the jump.
  std::size_t max_r = 0;
  for (const auto& pmf : sojourn_pmf) max_r = std::max(max_r, pmf.size() - 1);
  std::vector<std::vector<double>> joint(k, std::vector<double>(max_r + 1, 0.0));
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t r = 1; r < sojourn_pmf[s].size(); ++r) {
      joint[s][r] = benchmark.initial_pmf[s] * sojourn_pmf[s][r];
    }
  }

  std::vector<std::vector<double>> next(k, std::vector<double>(max_r + 1, 0.0));
  for (long step = 0; step < t; ++step) {
    for (auto& row : next) std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t s = 0; s < k; ++s) {
      // Count down the residual; at residual 1 the process jumps.
      for (std::size_t r = 2; r <= max_r; ++r) {
        next[s][r - 1] += joint[s][r];
      }
      const double jumping = joint[s][1];
      if (jumping > 0.0) {
        for (std::size_t z = 0; z < k; ++z) {
          const double p_z = jumping * benchmark.kernel[s][z];
          if (p_z == 0.0) continue;
          for (std::size_t r = 1; r < sojourn_pmf[z].size(); ++r) {
            next[z][r] += p_z * sojourn_pmf[z][r];
          }
        }
      }
    }
    joint.swap(next);
  }

  DiscreteMarginal out;
  out.truncated_mass = truncated;
  out.pmf.assign(k, 0.0);
  double total = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    for (double p : joint[s]) out.pmf[s] += p;
    total += out.pmf[s];
  }
  for (double& p : out.pmf) p /= total;
  return out;
}

std::vector<std::vector<double>> mh_kernel_discrete(
    std::span<const double> target_pmf, const std::vector<std::vector<double>>& proposal) {
  const std::size_t k = target_pmf.size();
  if (proposal.size() != k || k == 0) throw InvalidInput("mh_kernel_discrete: dimension mismatch");
  std::vector<std::vector<double>> kernel(k, std::vector<double>(k, 0.0));
  for (std::size_t y = 0; y < k; ++y) {
    if (proposal[y].size() != k) throw InvalidInput("mh_kernel_discrete: dimension mismatch");
    double reject = 0.0;
    for (std::size_t z = 0; z < k; ++z) {
      double a = 1.0;
      if (target_pmf[y] * proposal[y][z] > 0.0) {
        a = std::min(1.0, target_pmf[z] * proposal[z][y] / (target_pmf[y] * proposal[y][z]));
      }
      if (z != y) {
        kernel[y][z] = proposal[y][z] * a;
        reject += proposal[y][z] * (1.0 - a);
      }
    }
    kernel[y][y] = proposal[y][y] + reject;
  }
  return kernel;
}

// ---------------------------------------------------------------------------
// Total variation estimation

namespace {

double half_l1(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return 0.5 * acc;
}

TvEstimate tv_with_bootstrap(const std::vector<long>& counts,
                             std::span<const double> reference_pmf, long n, SplitRng& rng) {
  constexpr int kResamples = 200;
  const std::size_t cells = counts.size();
  std::vector<double> freq(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  TvEstimate est;
  est.tv = half_l1(freq, reference_pmf);

  // Multinomial resampling of the cell counts is an iid resample of the
  // underlying sample for any statistic of the binned data. Cells are drawn
  // by CDF inversion on the empirical frequencies.
  std::vector<double> cdf(cells);
  double acc = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    acc += freq[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  std::vector<long> boot_counts(cells);
  std::vector<double> boot(cells);
  double mean = 0.0;
  double m2 = 0.0;
  for (int b = 0; b < kResamples; ++b) {
    std::fill(boot_counts.begin(), boot_counts.end(), 0);
    for (long j = 0; j < n; ++j) {
      const double u = rng.uniform01();
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      ++boot_counts[std::min(cells - 1, static_cast<std::size_t>(it - cdf.begin()))];
    }
    for (std::size_t i = 0; i < cells; ++i) {
      boot[i] = static_cast<double>(boot_counts[i]) / static_cast<double>(n);
    }
    const double tv_b = half_l1(boot, reference_pmf);
    const double delta = tv_b - mean;
    mean += delta / (b + 1);
    m2 += delta * (tv_b - mean);
  }
  est.mc_error = std::sqrt(m2 / (kResamples - 1));
  return est;
}

}  // namespace

BinSpec default_bin_spec(const Density& reference, int count, double tail_mass) {
  if (reference.support().is_discrete()) {
    throw ModeError("default_bin_spec: continuous reference required");
  }
  const double half_tail = 0.5 * tail_mass;
  auto pdf = [&reference](double x) { return std::exp(reference.log_normalized(x)); };
  // Expand a window around 0 until each outside tail is below half_tail,
  // then bisect the cut points.
  double lo = -1.0;
  double hi = 1.0;
  while (integrate_left_tail(pdf, lo, 8.0) > half_tail) lo *= 2.0;
  while (integrate_right_tail(pdf, hi, 8.0) > half_tail) hi *= 2.0;
  // `valid` satisfies the tail condition, `invalid` is its inward partner;
  // move the cut toward the smallest window that still holds the mass.
  auto bisect = [&](double valid, double invalid, bool left) {
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (valid + invalid);
      const double tail = left ? integrate_left_tail(pdf, mid, 8.0)
                               : integrate_right_tail(pdf, mid, 8.0);
      if (tail > half_tail) {
        invalid = mid;
      } else {
        valid = mid;
      }
      if (std::abs(valid - invalid) < 1e-6 * (1.0 + std::abs(mid))) break;
    }
    return valid;
  };
  BinSpec spec;
  spec.lo = bisect(lo, lo / 2.0, true);
  spec.hi = bisect(hi, hi / 2.0, false);
  if (spec.lo > spec.hi) std::swap(spec.lo, spec.hi);
  spec.count = count;
  return spec;
}

std::vector<double> reference_bin_probs(const Density& reference, const BinSpec& bins) {
  if (!reference.has_normalizer()) {
    throw ConfigError("reference_bin_probs: continuous reference must be normalized");
  }
  if (bins.count < 1 || !(bins.hi > bins.lo)) throw InvalidInput("reference_bin_probs: bad bins");
  auto pdf = [&reference](double x) { return std::exp(reference.log_normalized(x)); };
  std::vector<double> probs(static_cast<std::size_t>(bins.count) + 2, 0.0);
  probs.front() = integrate_left_tail(pdf, bins.lo, bins.hi - bins.lo);
  probs.back() = integrate_right_tail(pdf, bins.hi, bins.hi - bins.lo);
  const double width = (bins.hi - bins.lo) / bins.count;
  for (int i = 0; i < bins.count; ++i) {
    probs[static_cast<std::size_t>(i) + 1] =
        integrate(pdf, bins.lo + i * width, bins.lo + (i + 1) * width);
  }
  return probs;
}

std::vector<long> bin_counts(std::span<const double> samples, const BinSpec& bins) {
  std::vector<long> counts(static_cast<std::size_t>(bins.count) + 2, 0);
  const double width = (bins.hi - bins.lo) / bins.count;
  for (double x : samples) {
    if (x < bins.lo) {
      ++counts.front();
    } else if (x >= bins.hi) {
      ++counts.back();
    } else {
      const int cell = std::min(bins.count - 1, static_cast<int>((x - bins.lo) / width));
      ++counts[static_cast<std::size_t>(cell) + 1];
    }
  }
  return counts;
}

TvEstimate estimate_tv(std::span<const double> samples, std::span<const double> reference_pmf,
                       SplitRng& rng) {
  if (samples.size() < 1000) throw InvalidInput("estimate_tv: need at least 1000 samples");
  std::vector<long> counts(reference_pmf.size(), 0);
  for (double x : samples) {
    const long idx = std::llround(x);
    if (idx < 0 || static_cast<std::size_t>(idx) >= counts.size() ||
        static_cast<double>(idx) != x) {
      throw InvalidInput("estimate_tv: sample is not an atom of the discrete reference");
    }
    ++counts[static_cast<std::size_t>(idx)];
  }
  return tv_with_bootstrap(counts, reference_pmf, static_cast<long>(samples.size()), rng);
}

TvEstimate estimate_tv(std::span<const double> samples, const Density& reference,
                       const BinSpec& bins, SplitRng& rng) {
  if (samples.size() < 1000) throw InvalidInput("estimate_tv: need at least 1000 samples");
  if (reference.support().is_discrete()) {
    throw ModeError("estimate_tv: use the pmf overload for discrete references");
  }
  const std::vector<double> probs = reference_bin_probs(reference, bins);
  const std::vector<long> counts = bin_counts(samples, bins);
  return tv_with_bootstrap(counts, probs, static_cast<long>(samples.size()), rng);
}

// ---------------------------------------------------------------------------
// Analytic bound curves

std::vector<double> bound_curve(BoundKind kind, const BoundParams& params,
                                std::span<const double> times) {
  double log_rate = 0.0;  // per-unit-time log decay factor
  switch (kind) {
    case BoundKind::doeblin:
      if (!(params.beta > 0.0) || params.beta > 1.0) {
        throw InvalidInput("bound_curve: doeblin needs beta in (0,1]");
      }
      if (!(params.kappa > 0.0) || !(params.w_star > 0.0)) {
        throw InvalidInput("bound_curve: doeblin needs positive kappa and w_star");
      }
      log_rate = -params.beta / (params.kappa * params.w_star);
      break;
    case BoundKind::mh_independence:
      if (!(params.w_star >= 1.0)) {
        throw InvalidInput("bound_curve: mh_independence needs w_star >= 1");
      }
      log_rate = std::log1p(-1.0 / params.w_star);
      break;
    case BoundKind::sz:
      if (!(params.kappa * params.w_star > 0.0)) {
        throw InvalidInput("bound_curve: sz needs kappa*w_star > 0");
      }
      log_rate = -std::log1p(params.kappa * params.w_star);
      break;
    case BoundKind::gasemyr:
      if (!(params.kappa * params.w_star > 1.0)) {
        throw InvalidInput(
            "bound_curve: gasemyr needs kappa*w_star > 1 (otherwise the chain is already exact)");
      }
      log_rate = std::log1p(-1.0 / (params.kappa * params.w_star));
      break;
  }
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < 0.0) throw InvalidInput("bound_curve: negative time");
    out.push_back(std::exp(log_rate * t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Replicated runs

namespace {

// Walk one replicate along the time grid without materializing the path.
void walk_replicate(const ReplicateSpec& spec, std::span<const double> times,
                    SplitRng replicate_rng, std::vector<std::vector<double>>& out, long r) {
  SplitRng init_rng = replicate_rng.split(0);
  SplitRng stream_rng = replicate_rng.split(1);
  StreamPtr stream = spec.make_stream(init_rng);

  std::size_t cursor = 0;
  double epoch = 0.0;
  std::optional<WeightedPoint> first;
  if (spec.make_initial) first = spec.make_initial(init_rng);

  WeightedPoint point = first ? *first : stream->next(stream_rng);
  while (cursor < times.size()) {
    if (!(point.weight > 0.0)) throw InvalidInput("replicate walk: nonpositive weight");
    const double next_epoch = epoch + point.weight;
    while (cursor < times.size() && times[cursor] < next_epoch) {
      out[cursor][static_cast<std::size_t>(r)] = point.state;
      ++cursor;
    }
    epoch = next_epoch;
    if (cursor < times.size()) point = stream->next(stream_rng);
  }
}

}  // namespace

std::vector<std::vector<double>> run_replicates(const ReplicateSpec& spec,
                                                std::span<const double> times, long m,
                                                std::uint64_t seed, int workers) {
  if (!spec.make_stream) throw ConfigError("run_replicates: stream factory required");
  if (m < 1) throw InvalidInput("run_replicates: need at least one replicate");
  if (times.empty()) throw InvalidInput("run_replicates: empty time grid");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] <= times[i - 1])) {
      throw InvalidInput("run_replicates: times must be nonnegative and strictly increasing");
    }
    if (spec.mode == TimeMode::discrete && std::floor(times[i]) != times[i]) {
      throw ModeError("run_replicates: discrete mode requires integer times");
    }
  }

  std::vector<std::vector<double>> out(times.size(),
                                       std::vector<double>(static_cast<std::size_t>(m)));
  const SplitRng root(seed);

  std::atomic<long> next_index{0};
  std::mutex error_mutex;
  std::string first_error;

  auto worker_fn = [&]() {
    while (true) {
      const long r = next_index.fetch_add(1);
      if (r >= m) return;
      try {
        walk_replicate(spec, times, root.split(static_cast<std::uint64_t>(r)), out, r);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty()) {
          first_error = "replicate " + std::to_string(r) + ": " + e.what();
        }
        next_index.store(m);
        return;
      }
    }
  };

  if (workers <= 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();
  }
  if (!first_error.empty()) throw Error(first_error);
  return out;
}

void TvReport::write_csv(std::ostream& out) const {
  out << "time,tv,bound,mc_error\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << format_shortest(times[i]) << ',' << format_shortest(tv[i]) << ',';
    if (!bound.empty()) out << format_shortest(bound[i]);
    out << ',' << format_shortest(mc_error[i]) << '\n';
  }
}

}  // namespace jumpmc
