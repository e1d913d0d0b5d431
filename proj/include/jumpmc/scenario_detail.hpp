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

// Internal helpers shared by scenario parsing/validation and execution.

#pragma once

#include <string>

#include "jumpmc/estimators.hpp"
#include "jumpmc/measure.hpp"
#include "jumpmc/scenario.hpp"

namespace jumpmc::detail {

/// Density expression: normal(mu,sigma) | cauchy(x0,gamma) |
/// mixture(w1:expr, w2:expr, ...) | discrete([p1,...,pk]).
/// Numbers accept the a/b fraction form. Throws ConfigError on bad input.
Density build_density(const std::string& expr);

/// Proposal expression: rw-normal(sigma) | independent(<density>) |
/// uniform-discrete (uniform over the target's atoms).
TransitionDensity build_proposal(const std::string& expr, const Density& target);

/// Transition expression for chain reweighting: mh-kernel (the analytic
/// one-step kernel of a uniform-proposal MH chain on the discrete target) |
/// independent(<density>).
TransitionDensity build_transition(const std::string& expr, const Density& target);

/// h expression: id | indicator(k) | power(p).
StateFunction build_state_function(const std::string& expr);

/// sup target/trial: the declared tv.w-star when present, the exact atom
/// maximum on discrete supports, otherwise a grid search over tv.range.
double resolved_w_star(const Scenario& scenario, const Density& target,
                       const std::optional<Density>& trial);

}  // namespace jumpmc::detail
