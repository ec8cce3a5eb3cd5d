// Copyright 2026 The Decouple Authors
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

namespace decouple {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree (qubit counts, matrix dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Request would exceed the dense-storage or enumeration guards.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid, missing or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input failed a numerical validity check (e.g. not Hermitian).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Accumulated numerical error exceeded tolerance during a computation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Operation is not defined for the given input kind.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace decouple
