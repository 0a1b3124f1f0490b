// Copyright 2026 The catsampler authors
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

namespace catsampler {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or inconsistent input (CLI exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a desk-scale resource cap (CLI exit code 2).
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

class NonSquareError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonFiniteError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Matrix fails the unitarity check; carries the measured deviation.
class NotUnitaryError final : public ValidationError {
 public:
  NotUnitaryError(const std::string& msg, double max_deviation)
      : ValidationError(msg), max_deviation_(max_deviation) {}
  double max_deviation() const { return max_deviation_; }

 private:
  double max_deviation_;
};

class ModeOutOfRangeError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimMismatchError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyCatError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateNormError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NOverflowError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyDistributionError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError final : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TooLargeError final : public ResourceCapError {
 public:
  using ResourceCapError::ResourceCapError;
};

class TermExplosionError final : public ResourceCapError {
 public:
  using ResourceCapError::ResourceCapError;
};

}  // namespace catsampler
