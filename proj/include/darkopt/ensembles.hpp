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

#ifndef DARKOPT_ENSEMBLES_HPP
#define DARKOPT_ENSEMBLES_HPP

#include <variant>
#include <vector>

#include "darkopt/operator_core.hpp"

namespace darkopt {

struct WeightedState {
    double weight;
    DensityMatrix state;
};

/// Finite prior: states with nonnegative weights summing to one.
class DiscreteEnsemble {
   public:
    /// Throws ValidationError for an empty list, negative weights, weights
    /// not summing to 1 (within 1e-10) or mixed dimensions.
    explicit DiscreteEnsemble(std::vector<WeightedState> members);

    const std::vector<WeightedState> &members() const noexcept {
        return members_;
    }
    std::size_t dim() const noexcept {
        return members_.front().state.dim();
    }

   private:
    std::vector<WeightedState> members_;
};

/// Received states diag(p, 1 - p) of |1><1| sent through amplitude damping,
/// with p uniform on [0, delta].
struct AmplitudeDampingFamily {
    double delta = 0;
    /// Only used by the trapezoid cross-check.
    int quadrature_points = 201;

    /// Throws ValidationError unless 0 <= delta <= 1 and quadrature_points >= 2.
    void validate() const;
    /// Member state for noise strength p.
    static DensityMatrix member(double p);
};

/// All density operators on C^dim with the unitarily invariant measure.
struct UniformFullSpace {
    std::size_t dim = 0;
};

using Ensemble = std::variant<DiscreteEnsemble, AmplitudeDampingFamily, UniformFullSpace>;

std::size_t ensemble_dim(const Ensemble &ensemble);

/// Average state of the ensemble: weighted sum, closed form diag(delta/2,
/// 1 - delta/2) for the amplitude damping family, I/n for the full space.
DensityMatrix average_state(const Ensemble &ensemble);

/// Trapezoid-rule average over p in [0, delta] using the family's
/// quadrature_points. Independent of the closed form used by average_state.
DensityMatrix trapezoid_average_state(const AmplitudeDampingFamily &family);

/// Finite set of representative states standing in for "every state in D":
/// discrete members; 11 evenly spaced p values for the damping family; for the
/// full space, the n^2 pure states |i>, (|i>+|j>)/sqrt2, (|i>+i|j>)/sqrt2
/// (which span the Hermitian matrices) plus I/n.
std::vector<DensityMatrix> probe_states(const Ensemble &ensemble);

/// Trace-preserving channel rho -> sum_i E_i rho E_i^dagger.
class KrausChannel {
   public:
    /// Throws ValidationError unless sum_i E_i^dagger E_i = I within 1e-9.
    explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops);

    const std::vector<ComplexMatrix> &kraus_ops() const noexcept {
        return ops_;
    }
    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(ops_.front().rows());
    }

   private:
    std::vector<ComplexMatrix> ops_;
};

/// E_0 = diag(1, sqrt(1-p)), E_1 = sqrt(p)|0><1|. Requires 0 <= p <= 1.
KrausChannel amplitude_damping_channel(double p);

DensityMatrix apply_channel(const KrausChannel &channel, const DensityMatrix &rho);

}  // namespace darkopt

#endif
