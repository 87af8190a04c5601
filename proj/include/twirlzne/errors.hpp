// Copyright 2026 The twirlzne authors
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

#include <stdexcept>
#include <string>

namespace twirlzne {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree (qubit counts, vector lengths, ...).
struct DimensionError : Error {
  using Error::Error;
};

/// Request exceeds a configured dense-representation limit.
struct CapacityError : Error {
  using Error::Error;
};

/// A documented precondition of an operation was violated.
struct ContractError : Error {
  using Error::Error;
};

/// A numerical self-check failed (imaginary residue, CPTP violation, ...).
struct IntegrityError : Error {
  using Error::Error;
};

/// Input text could not be parsed; message names the offending line.
struct ParseError : Error {
  using Error::Error;
};

/// Operation dispatched on an incompatible simulation path.
struct ModeError : Error {
  using Error::Error;
};

}  // namespace twirlzne
