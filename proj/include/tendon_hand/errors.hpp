// Copyright 2026 The Tendon Hand Authors
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

#ifndef TENDON_HAND_ERRORS_HPP_
#define TENDON_HAND_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tendon_hand {

/// A hand, joint, or actuator description breaks one of its invariants.
class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument is outside the domain of an operation (negative tension,
/// angle beyond a joint limit, non-positive calibration value).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A movable-pulley excursion request would need a branch to push wire.
class InfeasibleRoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario file problems: bad JSON, unknown fields, missing sections.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveDiagnostics {
  int iterations = 0;
  double residual = 0.0;  // projected gradient norm, Nm
  bool converged = false;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolveDiagnostics diagnostics)
      : std::runtime_error(what), diagnostics_(diagnostics) {}

  const SolveDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  SolveDiagnostics diagnostics_;
};

}  // namespace tendon_hand

#endif  // TENDON_HAND_ERRORS_HPP_
