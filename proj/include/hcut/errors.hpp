// Copyright 2026 The hcut Authors
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

namespace hcut {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept = 0;
};

/// Shapes that do not fit together (length mismatch, bad qubit index, ...).
struct DimensionError : Error {
    using Error::Error;
    const char *kind() const noexcept override {
        return "dimension";
    }
};

/// Input exceeds a configured brute-force or memory cap.
struct CapacityError : Error {
    using Error::Error;
    const char *kind() const noexcept override {
        return "capacity";
    }
};

/// Argument outside its mathematical domain.
struct DomainError : Error {
    using Error::Error;
    const char *kind() const noexcept override {
        return "domain";
    }
};

/// Zero norm, zero shots, and similar degenerate inputs.
struct DegeneracyError : Error {
    using Error::Error;
    const char *kind() const noexcept override {
        return "degeneracy";
    }
};

/// A computed quantity violates an identity it must satisfy (e.g. a negative probability).
struct ConsistencyError : Error {
    using Error::Error;
    const char *kind() const noexcept override {
        return "consistency";
    }
};

/// Invalid experiment configuration.
struct ConfigError : Error {
    using Error::Error;
    const char *kind() const noexcept override {
        return "config";
    }
};

}  // namespace hcut
