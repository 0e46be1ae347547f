// Copyright 2026 The darkopt Authors
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

#ifndef DARKOPT_ERRORS_HPP
#define DARKOPT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace darkopt {

/// Base class of every error raised by the library.
///
/// `kind()` is a stable identifier (e.g. "TraceError") that the CLI echoes in
/// its error payload.
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string &message)
        : std::runtime_error(message), kind_(std::move(kind)) {
    }
    const std::string &kind() const noexcept {
        return kind_;
    }

   private:
    std::string kind_;
};

/// Input violates a domain invariant (PSD, unit trace, completeness, ...).
class ValidationError : public Error {
   public:
    using Error::Error;
};

class DimensionError : public ValidationError {
   public:
    explicit DimensionError(const std::string &message) : ValidationError("DimensionError", message) {
    }
};

class HermiticityError : public ValidationError {
   public:
    HermiticityError(std::size_t row, std::size_t col, double deviation);
    std::size_t row;
    std::size_t col;
    double deviation;
};

class TraceError : public ValidationError {
   public:
    explicit TraceError(double actual_trace);
    double actual_trace;
};

class PsdError : public ValidationError {
   public:
    explicit PsdError(double min_eigenvalue);
    double min_eigenvalue;
};

class EffectError : public ValidationError {
   public:
    EffectError(std::size_t index, double min_eigenvalue);
    std::size_t index;
    double min_eigenvalue;
};

class OvercompleteError : public ValidationError {
   public:
    /// `min_eigenvalue` is the smallest eigenvalue of I - sum(M_k).
    explicit OvercompleteError(double min_eigenvalue);
    double min_eigenvalue;
};

class IncompleteInputError : public ValidationError {
   public:
    IncompleteInputError();
};

class DegenerateEnsembleError : public ValidationError {
   public:
    explicit DegenerateEnsembleError(double t_max);
    double t_max;
};

class ZeroEffectError : public ValidationError {
   public:
    ZeroEffectError(std::size_t index, double value);
    std::size_t index;
    double value;
};

}  // namespace darkopt

#endif
