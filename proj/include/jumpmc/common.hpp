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

#include <stdexcept>
#include <string>

namespace jumpmc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state was evaluated outside the support of a density, or the density
/// vanishes where it must dominate.
class SupportViolation : public Error {
 public:
  using Error::Error;
};

/// A query time is not covered by the realized path; the caller must extend
/// the path first.
class PathExhausted : public Error {
 public:
  using Error::Error;
};

/// Continuous/discrete time-mode mismatch (non-integer weight or query time
/// in discrete mode, density of a point-mass law, ...).
class ModeError : public Error {
 public:
  using Error::Error;
};

/// A sampler or scenario was assembled from incompatible pieces: missing
/// exact sampler, proportionality violation, invalid hazard floor, ...
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed data passed to an operation: nonpositive weight, empty input,
/// dimension mismatch, missing anchor in a trace.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace jumpmc
