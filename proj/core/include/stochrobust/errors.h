// Copyright 2026 The stochrobust Authors
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

#ifndef STOCHROBUST_ERRORS_H_
#define STOCHROBUST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace stochrobust {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two structures do not share states, moves or move sets.
class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

// An operation that needs identical supports got structures that differ.
class NotStructurallyEquivalentError : public Error {
 public:
  using Error::Error;
};

// Inputs violate an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A brute-force routine would exceed its enumeration budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// Should be unreachable; signals a solver bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace stochrobust

#endif  // STOCHROBUST_ERRORS_H_
