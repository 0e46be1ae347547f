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

#ifndef DARKOPT_POVM_HPP
#define DARKOPT_POVM_HPP

#include <span>
#include <string_view>
#include <vector>

#include "darkopt/operator_core.hpp"

namespace darkopt {

/// Tolerance on max|sum(M_k) - I| for a POVM to count as complete.
inline constexpr double kCompletenessTol = 1e-9;

enum class Completeness { Complete, SubNormalized };

std::string_view to_string(Completeness c);

/// An ordered list of PSD effects. Effects are identified by index only.
///
/// Instances only come out of validate_povm, so the PSD and completeness
/// invariants always hold.
class Povm {
   public:
    std::size_t dim() const noexcept {
        return dim_;
    }
    std::size_t size() const noexcept {
        return effects_.size();
    }
    const std::vector<HermitianOperator> &effects() const noexcept {
        return effects_;
    }
    const HermitianOperator &effect(std::size_t k) const {
        return effects_.at(k);
    }
    Completeness completeness() const noexcept {
        return completeness_;
    }
    bool is_complete() const noexcept {
        return completeness_ == Completeness::Complete;
    }
    /// Sum of all effects.
    HermitianOperator effect_sum() const;

   private:
    Povm(std::vector<HermitianOperator> effects, Completeness completeness)
        : dim_(effects.front().dim()), effects_(std::move(effects)), completeness_(completeness) {
    }
    friend Povm validate_povm(std::vector<HermitianOperator> effects, double tol, double psd_tol);

    std::size_t dim_;
    std::vector<HermitianOperator> effects_;
    Completeness completeness_;
};

/// Classifies the effects as Complete (sum = I within tol) or SubNormalized
/// (I - sum PSD within tol). Throws EffectError for a non-PSD effect (checked
/// against psd_tol), OvercompleteError when the sum exceeds I, and
/// DimensionError for an empty list or mixed dimensions.
Povm validate_povm(std::vector<HermitianOperator> effects, double tol = kCompletenessTol, double psd_tol = kDefaultTol);

/// Born probabilities Tr(M_k rho). Values within 1e-10 outside [0, 1] are
/// clamped onto the boundary.
std::vector<double> born_probabilities(const Povm &povm, const DensityMatrix &rho);

/// Projective measurement in the computational basis of C^dim.
Povm computational_basis(std::size_t dim);

/// The four-outcome qubit SIC: M_k = (I + s_k . sigma) / 4 with s_k the
/// vertices of a regular tetrahedron.
Povm sic_povm_qubit();

}  // namespace darkopt

#endif
