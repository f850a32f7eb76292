// Copyright 2026 The repro-bound Authors
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

namespace repro {

enum class ErrorKind {
    invalid_parameter,
    invalid_state,
    capacity,
    shape,
    empty_data,
    misuse,
    insufficient_data,
    singular_fidelity,
    model_mismatch,
    out_of_regime,
    input,
    io,
    incomplete,
};

inline const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_parameter: return "invalid-parameter";
        case ErrorKind::invalid_state: return "invalid-state";
        case ErrorKind::capacity: return "capacity";
        case ErrorKind::shape: return "shape";
        case ErrorKind::empty_data: return "empty-data";
        case ErrorKind::misuse: return "misuse";
        case ErrorKind::insufficient_data: return "insufficient-data";
        case ErrorKind::singular_fidelity: return "singular-fidelity";
        case ErrorKind::model_mismatch: return "model-mismatch";
        case ErrorKind::out_of_regime: return "out-of-regime";
        case ErrorKind::input: return "input";
        case ErrorKind::io: return "io";
        case ErrorKind::incomplete: return "incomplete";
    }
    return "unknown";
}

/// Base of every error raised by the toolkit. The kind is what callers
/// dispatch on; the message is for humans.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

/// Raised when a tolerance exceeds the regime where the γ bound is exact.
class OutOfRegimeError : public Error {
   public:
    OutOfRegimeError(const std::string &message, double ceiling)
        : Error(ErrorKind::out_of_regime, message), ceiling_(ceiling) {}

    /// The largest admissible tolerance for the offending qubit count.
    double ceiling() const noexcept { return ceiling_; }

   private:
    double ceiling_;
};

}  // namespace repro
