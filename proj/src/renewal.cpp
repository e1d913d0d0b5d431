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

#include "jumpmc/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "jumpmc/numeric.hpp"

namespace jumpmc {

namespace {

void validate_weight(double w, TimeMode mode) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw InvalidInput("JumpPath: weights must be strictly positive and finite");
  }
  if (mode == TimeMode::discrete && std::floor(w) != w) {
    throw ModeError("JumpPath: discrete mode requires integer weights");
  }
}

}  // namespace

JumpPath JumpPath::build(std::span<const WeightedPoint> points, TimeMode mode) {
  JumpPath path(mode);
  path.points_.reserve(points.size());
  path.epochs_.reserve(points.size() + 1);
  for (const WeightedPoint& p : points) path.append(p);
  return path;
}

void JumpPath::append(WeightedPoint p) {
  validate_weight(p.weight, mode_);
  points_.push_back(p);
  epochs_.push_back(epochs_.back() + p.weight);
}

void JumpPath::check_time(double t) const {
  if (!(t >= 0.0)) throw InvalidInput("JumpPath: query time must be nonnegative");
  if (mode_ == TimeMode::discrete && std::floor(t) != t) {
    throw ModeError("JumpPath: discrete mode evaluates only integer times");
  }
  if (t >= epochs_.back() || points_.empty()) {
    throw PathExhausted("JumpPath: time " + std::to_string(t) +
                        " not covered (total " + std::to_string(epochs_.back()) + ")");
  }
}

std::size_t JumpPath::count_at(double t) const {
  check_time(t);
  // First epoch strictly greater than t, minus one.
  const auto it = std::upper_bound(epochs_.begin(), epochs_.end(), t);
  return static_cast<std::size_t>(it - epochs_.begin()) - 1;
}

double JumpPath::excess_life_at(double t) const {
  const std::size_t n = count_at(t);
  return epochs_[n + 1] - t;
}

JumpPath build_path(std::span<const WeightedPoint> points, TimeMode mode) {
  return JumpPath::build(points, mode);
}

void write_path_csv(const JumpPath& path, std::ostream& out) {
  out << "index,state,weight,epoch_start\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    const WeightedPoint& p = path.points()[i];
    out << i << ',' << format_shortest(p.state) << ',' << format_shortest(p.weight) << ','
        << format_shortest(path.epochs()[i]) << '\n';
  }
}

}  // namespace jumpmc
