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

#ifndef DARKOPT_DARKCOUNT_HPP
#define DARKOPT_DARKCOUNT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "darkopt/optimizer.hpp"

namespace darkopt {

/// Per-detector probability of a dark click in one measurement window.
class DarkCountModel {
   public:
    /// Requires 0 <= epsilon < 0.5 and, when a range is given,
    /// lo <= epsilon <= hi.
    explicit DarkCountModel(double epsilon, std::optional<std::pair<double, double>> range = std::nullopt);

    double epsilon() const noexcept {
        return epsilon_;
    }
    const std::optional<std::pair<double, double>> &range() const noexcept {
        return range_;
    }

   private:
    double epsilon_;
    std::optional<std::pair<double, double>> range_;
};

/// Number of clicks a single detector survives.
class LifetimeModel {
   public:
    explicit LifetimeModel(double clicks_per_detector);
    double clicks_per_detector() const noexcept {
        return clicks_;
    }

   private:
    double clicks_;
};

/// (T_k + eps) / (1 + m eps). The profile must sum to 1 within 1e-9.
std::vector<double> observed_distribution(const TraceProfile &profile, const DarkCountModel &model);

/// 1 + eps / T_k. Throws ZeroEffectError when some T_k <= 1e-12.
std::vector<double> inflation_ratios(const TraceProfile &profile, const DarkCountModel &model);

/// Geometric mean of eps / T_k, evaluated as exp(mean(log)). Requires eps > 0.
double gm_figure_of_merit(const TraceProfile &profile, const DarkCountModel &model);

/// 1 + (eps - eta) / T_k: leftover distortion after subtracting an assumed
/// dark rate eta. Values below 1 mean over-subtraction.
std::vector<double> subtraction_residual(const TraceProfile &profile, double epsilon, double eta);

/// L / max_k T_k: expected number of states measured before the most-used
/// detector wears out.
double lifetime_capacity(const TraceProfile &profile, const LifetimeModel &model);

}  // namespace darkopt

#endif
