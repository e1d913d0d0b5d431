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

#include "jumpmc/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace jumpmc {

std::string format_shortest(double v) {
  char buf[64];
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  return adapt(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, max_depth);
}

double integrate_left_tail(const std::function<double(double)>& f, double b,
                           double initial_span, double tail_tol,
                           int max_doublings) {
  double span = initial_span;
  double lo = b - span;
  double total = integrate(f, lo, b);
  for (int i = 0; i < max_doublings; ++i) {
    const double next_lo = lo - span;
    const double inc = integrate(f, next_lo, lo);
    total += inc;
    lo = next_lo;
    span *= 2.0;
    if (inc < tail_tol) break;
  }
  return total;
}

double integrate_right_tail(const std::function<double(double)>& f, double a,
                            double initial_span, double tail_tol,
                            int max_doublings) {
  double span = initial_span;
  double hi = a + span;
  double total = integrate(f, a, hi);
  for (int i = 0; i < max_doublings; ++i) {
    const double next_hi = hi + span;
    const double inc = integrate(f, hi, next_hi);
    total += inc;
    hi = next_hi;
    span *= 2.0;
    if (inc < tail_tol) break;
  }
  return total;
}

}  // namespace jumpmc
