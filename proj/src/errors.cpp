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

#include "darkopt/errors.hpp"

#include <sstream>

namespace darkopt {

namespace {

template <typename... Args>
std::string cat(const Args &...args) {
    std::ostringstream out;
    out.precision(17);
    (out << ... << args);
    return out.str();
}

}  // namespace

HermiticityError::HermiticityError(std::size_t row, std::size_t col, double deviation)
    : ValidationError(
          "HermiticityError",
          cat("operator is not Hermitian: |A[", row, "][", col, "] - conj(A[", col, "][", row, "])| = ", deviation)),
      row(row),
      col(col),
      deviation(deviation) {
}

TraceError::TraceError(double actual_trace)
    : ValidationError("TraceError", cat("density matrix trace is ", actual_trace, ", expected 1")),
      actual_trace(actual_trace) {
}

PsdError::PsdError(double min_eigenvalue)
    : ValidationError("PsdError", cat("operator is not positive semidefinite: min eigenvalue ", min_eigenvalue)),
      min_eigenvalue(min_eigenvalue) {
}

EffectError::EffectError(std::size_t index, double min_eigenvalue)
    : ValidationError("EffectError", cat("effect ", index, " is not positive semidefinite: min eigenvalue ", min_eigenvalue)),
      index(index),
      min_eigenvalue(min_eigenvalue) {
}

OvercompleteError::OvercompleteError(double min_eigenvalue)
    : ValidationError(
          "OvercompleteError", cat("effects sum exceeds the identity: min eigenvalue of I - sum is ", min_eigenvalue)),
      min_eigenvalue(min_eigenvalue) {
}

IncompleteInputError::IncompleteInputError()
    : ValidationError(
          "IncompleteInputError", "optimize requires a complete POVM; call complete_first on sub-normalized input") {
}

DegenerateEnsembleError::DegenerateEnsembleError(double t_max)
    : ValidationError(
          "DegenerateEnsembleError", cat("every effect is (nearly) orthogonal to the average state: max T_k = ", t_max)),
      t_max(t_max) {
}

ZeroEffectError::ZeroEffectError(std::size_t index, double value)
    : ValidationError("ZeroEffectError", cat("effect ", index, " has vanishing average probability T_k = ", value)),
      index(index),
      value(value) {
}

}  // namespace darkopt
