// Copyright 2026 The QSD Toolkit Authors
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

namespace qsd {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shapes, out-of-range parameters, broken invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A requested construction does not exist (e.g. a POVM whose inconclusive
/// element would be negative).
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double most_negative_eigenvalue = 0.0)
      : Error(what), most_negative_eigenvalue_(most_negative_eigenvalue) {}

  double most_negative_eigenvalue() const { return most_negative_eigenvalue_; }

 private:
  double most_negative_eigenvalue_;
};

/// The states are linearly dependent, so no reciprocal basis exists.
class LinearDependenceError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

/// Conditioning on an outcome whose probability is (numerically) zero.
class ImpossibleOutcomeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsd
