// Copyright 2026 The Hotelling Attraction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hotelling {

// Interval or location outside the function's domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Undefined arithmetic (division by zero, non-integer where one is needed).
struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A profile violates the feasibility constraints of its game.
struct ConstraintError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operation requested under the wrong utility mode.
struct ModeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Constructor preconditions (agent count, widths) not met.
struct UnsupportedConfiguration : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Inconsistent or infeasible configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A state that should be unreachable. Carries enough context to reproduce.
struct InternalInvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace hotelling
