// Copyright 2026 The qchan Authors
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

namespace qchan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or out-of-range dimensions (also size overflow).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix does not have the structure an operation requires,
/// e.g. it is not Hermitian or contains non-finite entries.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input is not a valid quantum state (norm, trace, positivity).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Kraus operators fail sum_i X_i^dag X_i = I.
class NotTracePreservingError : public Error {
 public:
  NotTracePreservingError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}

  /// Max-norm distance between sum_i X_i^dag X_i and the identity.
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// Matrix is not the Choi matrix of a CPTP map.
class InvalidChoiError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a check was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace qchan
