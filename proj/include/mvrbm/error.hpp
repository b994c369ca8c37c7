// Copyright 2026 The mvrbm Authors.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvrbm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Row and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

// A value outside the domain of its column type, or an argument outside
// the documented range of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two objects that must agree on schema or shape do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Training or sampling produced a non-finite value or a runaway Poisson rate.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, long epoch = -1);

  // Epoch index (0-based) at which divergence was detected, or -1.
  long epoch() const noexcept { return epoch_; }

 private:
  long epoch_;
};

// An enumeration oracle was asked for a state space it refuses to walk.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

}  // namespace mvrbm
