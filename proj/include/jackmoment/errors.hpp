// Copyright 2026 The jackmoment Authors
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

#ifndef JACKMOMENT_ERRORS_HPP
#define JACKMOMENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jackmoment {

/// Raised when the inputs violate an operation's preconditions.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a requested quantity lies outside the range where the
/// asymptotic classification applies.
class RangeError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// A numerical procedure did not reach its tolerance within its budget.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace jackmoment

#endif // JACKMOMENT_ERRORS_HPP
