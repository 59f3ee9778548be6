// Copyright 2026 The cptlottery Authors
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

namespace cptlottery {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A constrained subproblem has an empty feasible set for the given input.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A weight sequence does not have the shape an operation requires.
class StructureError : public Error {
 public:
  using Error::Error;
};

// An object is in a state that does not support the requested operation.
class StateError : public Error {
 public:
  using Error::Error;
};

// A brute-force routine was asked for an instance beyond its size limit.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A fast path was called outside the parameter regime it is valid for.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cptlottery
