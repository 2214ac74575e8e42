// Copyright 2026 The Scorelab Authors.
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

#ifndef SCORELAB_ERRORS_HPP_
#define SCORELAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace scorelab {

// Raised when an argument lies outside the documented domain of an
// operation (e.g. a nonpositive shape parameter, a non-SPD covariance,
// an observation outside the forecast support).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iterative numerical routine fails to reach its requested
// tolerance.  Carries the best estimate obtained so callers can decide
// whether to accept it anyway.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_estimate)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const { return best_estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

// Raised when a configuration (experiment record, config file, CLI flag
// combination) is structurally invalid or requests an unsupported pairing.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when reading or writing a file fails.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scorelab

#endif  // SCORELAB_ERRORS_HPP_
