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

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "jumpmc/common.hpp"

namespace jumpmc {

/// Whether sojourn weights live on (0,inf) (continuous time) or on {1,2,...}
/// (discrete time; the process is then only evaluated at integer times).
enum class TimeMode { continuous, discrete };

/// One (state, sojourn weight) pair of a weighted sequence.
struct WeightedPoint {
  double state = 0.0;
  double weight = 0.0;
};

/// A finite realization of the jump process built from a weighted sequence:
/// the process holds points[k].state during [epochs[k], epochs[k+1]), where
/// epochs are the prefix sums of the weights. Sample paths are right
/// continuous with left limits; a jump epoch belongs to the sojourn it
/// starts.
///
/// Immutable apart from append(); all queries are read-only and safe for
/// concurrent use.
class JumpPath {
 public:
  static JumpPath build(std::span<const WeightedPoint> points, TimeMode mode);

  TimeMode mode() const { return mode_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<WeightedPoint>& points() const { return points_; }
  /// epochs()[k] is the jump epoch of point k; epochs() has size()+1 entries
  /// and ends at the total covered time.
  const std::vector<double>& epochs() const { return epochs_; }
  double total_time() const { return epochs_.back(); }

  void append(WeightedPoint p);

  /// Number of complete sojourns by time t: the largest n with epochs[n] <= t.
  /// Requires 0 <= t < total_time(); binary search.
  std::size_t count_at(double t) const;

  /// State occupied at time t (right continuous).
  double state_at(double t) const { return points_[count_at(t)].state; }

  /// Remaining time until the next jump: epochs[count_at(t)+1] - t > 0.
  double excess_life_at(double t) const;

 private:
  JumpPath(TimeMode mode) : mode_(mode), epochs_{0.0} {}

  void check_time(double t) const;

  TimeMode mode_;
  std::vector<WeightedPoint> points_;
  std::vector<double> epochs_;
};

/// Free-function form of JumpPath::build.
JumpPath build_path(std::span<const WeightedPoint> points, TimeMode mode);

/// CSV dump with columns (index, state, weight, epoch_start).
void write_path_csv(const JumpPath& path, std::ostream& out);

}  // namespace jumpmc
