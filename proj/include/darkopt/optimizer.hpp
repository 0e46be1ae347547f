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

#ifndef DARKOPT_OPTIMIZER_HPP
#define DARKOPT_OPTIMIZER_HPP

#include <span>
#include <string>
#include <vector>

#include "darkopt/ensembles.hpp"
#include "darkopt/povm.hpp"

namespace darkopt {

/// Tolerance on max_k T_k - min_k T_k for a profile to count as balanced.
inline constexpr double kBalanceTol = 1e-9;

/// Average outcome probabilities T_k = Tr(M_k rho_avg), in effect order.
class TraceProfile {
   public:
    /// Throws ValidationError if any entry leaves [-1e-10, 1 + 1e-10] or the
    /// list is empty.
    explicit TraceProfile(std::vector<double> values);

    const std::vector<double> &values() const noexcept {
        return values_;
    }
    std::size_t size() const noexcept {
        return values_.size();
    }
    double operator[](std::size_t k) const {
        return values_[k];
    }
    double sum() const;
    double max() const;
    double min() const;
    /// |sum - 1| <= tol.
    bool is_normalized(double tol = kCompletenessTol) const;

   private:
    std::vector<double> values_;
};

/// The outcome-probability correspondence p'_k = (p_k + y_k) / (m T) between a
/// POVM and its balanced counterpart.
struct AffineOutcomeMap {
    std::size_t m = 0;
    double t_max = 0;
    std::vector<double> offsets;

    /// Throws ValidationError if offsets.size() != m, t_max <= 0, any offset is
    /// negative, or min(offsets) > 1e-12.
    void validate() const;
    double scale() const {
        return static_cast<double>(m) * t_max;
    }
};

struct OptimizationResult {
    Povm optimized;
    AffineOutcomeMap map;
    TraceProfile original_profile;
};

TraceProfile trace_profile(const Povm &povm, const DensityMatrix &avg_state);

bool is_balanced(const TraceProfile &profile, double tol = kBalanceTol);

struct ProbeFailure {
    std::size_t probe_index;
    double probability_sum;
};

struct OptimalityReport {
    bool optimal = false;
    bool balanced = false;
    bool complete_on_probes = false;
    TraceProfile profile;
    double spread = 0;
    std::vector<ProbeFailure> failed_probes{};
    std::size_t probes_checked = 0;

    /// Human-readable account of which condition failed, empty when optimal.
    std::string explain() const;
};

/// A POVM is D-trace optimal when its profile against the ensemble average is
/// balanced and its outcome probabilities sum to 1 on every probe state.
OptimalityReport is_d_trace_optimal(const Povm &povm, const Ensemble &ensemble, double tol = kBalanceTol);

/// Rebalances a complete POVM: M'_k = (M_k + y_k I) / (m T) with T = max T_k
/// and y_k = T - T_k. Throws IncompleteInputError for sub-normalized input and
/// DegenerateEnsembleError when T <= 1e-12.
OptimizationResult optimize(const Povm &povm, const DensityMatrix &avg_state);

struct CompletionResult {
    Povm povm;
    /// Set when the input was already complete and was returned unchanged.
    bool already_complete = false;
};

/// Appends M_0 = I - sum(M_k) as a final effect so the result is complete.
CompletionResult complete_first(const Povm &povm);

/// Outcome distribution of the optimized POVM given that of the original.
std::vector<double> map_probabilities(const AffineOutcomeMap &map, std::span<const double> p);

/// Inverse of map_probabilities: p_k = m T p'_k - y_k.
std::vector<double> unmap_probabilities(const AffineOutcomeMap &map, std::span<const double> p_prime);

}  // namespace darkopt

#endif
