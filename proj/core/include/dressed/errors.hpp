// Copyright 2026 The dressed Authors
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

namespace dressed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A matrix expected to be Hermitian is not, within tolerance.
class NonHermitianInput : public Error {
   public:
    using Error::Error;
};

/// A built Hamiltonian failed its own Hermiticity check.
class NonHermitianResult : public Error {
   public:
    using Error::Error;
};

class BadSubsystemIndex : public Error {
   public:
    using Error::Error;
};

class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

class NotAQubit : public Error {
   public:
    using Error::Error;
};

class NotAMode : public Error {
   public:
    using Error::Error;
};

/// The truncation policy asks for more Fock levels than its hard cap allows.
class PolicyUnsatisfiable : public Error {
   public:
    using Error::Error;
};

class BadSegment : public Error {
   public:
    using Error::Error;
};

class DimensionBudgetExceeded : public Error {
   public:
    using Error::Error;
};

/// Parameters or states that violate a documented invariant.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

}  // namespace dressed
