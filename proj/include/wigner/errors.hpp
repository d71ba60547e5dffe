// Copyright 2026 The Wigner Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WIGNER_ERRORS_HPP
#define WIGNER_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace wigner {

/// Base of all library errors. kind() is a stable machine-readable tag used
/// in the CLI's error record.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Malformed or out-of-domain input.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("invalid_argument", message) {}
};

/// The entry law does not satisfy a regularity hypothesis a statistic needs.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& message)
      : Error("hypothesis", message) {}
};

/// Dense eigensolver did not converge.
class EigensolverFailure : public Error {
 public:
  explicit EigensolverFailure(const std::string& message)
      : Error("eigensolver", message) {}
};

/// A study produced no usable trials.
class EmptySample : public Error {
 public:
  explicit EmptySample(const std::string& message)
      : Error("empty_sample", message) {}
};

}  // namespace wigner

#endif  // WIGNER_ERRORS_HPP
