// Copyright 2026 The qaut Authors
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

namespace qaut {

/// Base class for every failure thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension and label mismatches: wrong matrix shapes, unknown outcome
/// labels, unknown nodes or arcs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Non-finite entries and internal numeric consistency failures
/// (probabilities outside [0,1] beyond tolerance, eigensolver fed a
/// non-Hermitian matrix, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Density-operator and state-vector validation failures.
class StateError : public Error {
 public:
  enum class Kind { NotHermitian, NotPsd, TraceNotOne, ZeroVector, NotUnitNorm };

  StateError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Structural failures of quantum operations: completeness violations,
/// non-isometric or non-unitary inputs, invalid embeddings.
class OperationError : public Error {
 public:
  using Error::Error;
};

/// Requested the post-measurement state of an outcome whose probability is
/// at or below the probability floor.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace qaut
