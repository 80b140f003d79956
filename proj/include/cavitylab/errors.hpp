// Copyright 2026 The cavitylab Authors
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

namespace cavitylab {

/// Invalid physical parameters or arguments outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A state or result became non-finite, or failed a numerical sanity check.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// The trace-constrained steady-state system is rank deficient, i.e. the
/// stationary manifold is degenerate.
class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Too much population sits on the highest retained Fock level.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double edge_population)
      : std::runtime_error(what), edge_population_(edge_population) {}
  double edge_population() const noexcept { return edge_population_; }

 private:
  double edge_population_;
};

/// Malformed or inconsistent JSON configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cavitylab
