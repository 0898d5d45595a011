// Copyright 2026 The lembas authors
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

namespace lembas {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched or invalid matrix/vector dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An object failed its construction-time checks (non-Hermitian density
// matrix, trace off by more than tolerance, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A quantity that must be real (or two routes that must agree) came out
// inconsistent beyond tolerance. Maps to CLI exit code 3.
class NumericalConsistencyError : public Error {
 public:
  using Error::Error;
};

// Propagation produced state drift beyond what the step size tolerates.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

// The entropy rate is formally divergent: the incoherent generator moves
// population into or out of the kernel of the state.
class KernelOverlapError : public Error {
 public:
  using Error::Error;
};

// Bad CLI usage or a config file that violates the schema. Exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lembas
