/*
 * Copyright 2026 The vsahand Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
*/

#pragma once

#include <stdexcept>
#include <string>

namespace vsahand {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition (non-positive geometry, s_max <= s_min, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A tendon would have to push: one spring deflection went negative.
class SlackTendon : public Error {
 public:
  using Error::Error;
};

/// A spring deflection exceeds the end of its cam travel.
class OverTravel : public Error {
 public:
  using Error::Error;
};

/// Requested stiffness outside the range the actuator can produce.
class UnreachableStiffness : public Error {
 public:
  using Error::Error;
};

/// A root could not be bracketed, or a synthesis step found no feasible interval.
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Linear system or Jacobian lost rank.
class Singular : public Error {
 public:
  using Error::Error;
};

/// A tracking reference leaves the admissible set of the inverse VSA map.
class InfeasibleReference : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or input file. `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace vsahand
