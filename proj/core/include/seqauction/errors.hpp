// Copyright 2026 The Authors.
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

namespace seqauction {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A positive price in a claimed-minimal equilibrium has no indifferent buyer;
// the input was not actually minimal.
class PositivePriceUnsupported : public Error {
 public:
  using Error::Error;
};

// The backward construction of a support order stalled.
class NoProgressError : public Error {
 public:
  using Error::Error;
};

// An enumeration exceeded its configured work bound.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A strategy profile was queried at a node it does not cover.
class ProfileIncomplete : public Error {
 public:
  using Error::Error;
};

// The instance is too large for an exhaustive search; the verdict is
// undecided rather than negative.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace seqauction
