// Copyright 2026 The kfpue Authors
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

#ifndef KFPUE__ERRORS_HPP_
#define KFPUE__ERRORS_HPP_

#include <stdexcept>

namespace kfpue
{

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical step cannot proceed, e.g. a singular innovation covariance.
class NumericalDegeneracy : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace kfpue

#endif  // KFPUE__ERRORS_HPP_
