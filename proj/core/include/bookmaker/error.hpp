// Copyright 2026 The Bookmaker Authors.
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

#ifndef BOOKMAKER_ERROR_HPP_
#define BOOKMAKER_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bookmaker {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input data violates a precondition: empty input, malformed file,
// zero margins, degenerate tables.
class DataError : public Error {
 public:
  using Error::Error;
};

// The caller passed an invalid argument (index out of range, bad option).
class UsageError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace bookmaker

#endif  // BOOKMAKER_ERROR_HPP_
