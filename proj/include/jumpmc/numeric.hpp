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
#include <span>
#include <string>
#include <vector>

namespace jumpmc {

/// Compensated accumulator (Neumaier variant). Long heavy-tailed sums keep
/// full double precision.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double log_sum_exp(std::span<const double> logs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : logs) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - m);
  return m + std::log(acc);
}

/// Shortest decimal string that round-trips to the same double. Used by all
/// CSV writers so outputs are byte-stable and human readable.
std::string format_shortest(double v);

/// Adaptive Simpson quadrature on [a,b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_depth = 40);

/// Integral of f over (-inf, b] (resp. [a, +inf)) by window doubling until
/// the increment falls below `tail_tol`. Intended for light-tailed
/// integrands; gives up after `max_doublings` and returns what it has.
double integrate_left_tail(const std::function<double(double)>& f, double b,
                           double initial_span, double tail_tol = 1e-12,
                           int max_doublings = 60);
double integrate_right_tail(const std::function<double(double)>& f, double a,
                            double initial_span, double tail_tol = 1e-12,
                            int max_doublings = 60);

}  // namespace jumpmc
