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

#include "darkopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace darkopt {

namespace {

void check_length(const AffineOutcomeMap &map, std::size_t n) {
    if (n != map.m) {
        std::ostringstream msg;
        msg << "probability vector has length " << n << ", map expects " << map.m;
        throw DimensionError(msg.str());
    }
}

}  // namespace

TraceProfile::TraceProfile(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("ProfileError", "trace profile is empty");
    }
    for (std::size_t k = 0; k < values_.size(); k++) {
        double v = values_[k];
        if (!(v >= -kDefaultTol && v <= 1 + kDefaultTol)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "trace profile entry " << k << " = " << v << " is not a probability";
            throw ValidationError("ProfileError", msg.str());
        }
    }
}

double TraceProfile::sum() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double TraceProfile::max() const {
    return *std::max_element(values_.begin(), values_.end());
}

double TraceProfile::min() const {
    return *std::min_element(values_.begin(), values_.end());
}

bool TraceProfile::is_normalized(double tol) const {
    return std::abs(sum() - 1) <= tol;
}

void AffineOutcomeMap::validate() const {
    if (m == 0 || offsets.size() != m) {
        throw ValidationError("MapError", "affine map offsets must have length m >= 1");
    }
    if (!(t_max > 0)) {
        throw ValidationError("MapError", "affine map t_max must be positive");
    }
    double lo = offsets.front();
    for (double y : offsets) {
        if (!(y >= 0)) {
            throw ValidationError("MapError", "affine map offsets must be nonnegative");
        }
        lo = std::min(lo, y);
    }
    if (lo > 1e-12) {
        throw ValidationError("MapError", "affine map needs at least one zero offset");
    }
}

TraceProfile trace_profile(const Povm &povm, const DensityMatrix &avg_state) {
    if (povm.dim() != avg_state.dim()) {
        std::ostringstream msg;
        msg << "POVM dimension " << povm.dim() << " does not match state dimension " << avg_state.dim();
        throw DimensionError(msg.str());
    }
    std::vector<double> t;
    t.reserve(povm.size());
    for (const auto &e : povm.effects()) {
        t.push_back(trace_inner(e, avg_state.op()));
    }
    return TraceProfile(std::move(t));
}

bool is_balanced(const TraceProfile &profile, double tol) {
    return profile.max() - profile.min() <= tol;
}

std::string OptimalityReport::explain() const {
    if (optimal) {
        return {};
    }
    std::ostringstream out;
    out.precision(17);
    if (!balanced) {
        out << "not balanced: max T_k - min T_k = " << spread;
    }
    if (!complete_on_probes) {
        if (!balanced) {
            out << "; ";
        }
        out << "outcome probabilities do not sum to 1 on " << failed_probes.size() << " of " << probes_checked
            << " probe states";
        if (!failed_probes.empty()) {
            out << " (first: probe " << failed_probes.front().probe_index << ", sum "
                << failed_probes.front().probability_sum << ")";
        }
    }
    return out.str();
}

OptimalityReport is_d_trace_optimal(const Povm &povm, const Ensemble &ensemble, double tol) {
    OptimalityReport report{.profile = trace_profile(povm, average_state(ensemble))};
    report.spread = report.profile.max() - report.profile.min();
    report.balanced = is_balanced(report.profile, tol);

    auto probes = probe_states(ensemble);
    report.probes_checked = probes.size();
    for (std::size_t i = 0; i < probes.size(); i++) {
        auto p = born_probabilities(povm, probes[i]);
        double s = std::accumulate(p.begin(), p.end(), 0.0);
        if (!(std::abs(s - 1) <= tol)) {
            report.failed_probes.push_back({i, s});
        }
    }
    report.complete_on_probes = report.failed_probes.empty();
    report.optimal = report.balanced && report.complete_on_probes;
    return report;
}

OptimizationResult optimize(const Povm &povm, const DensityMatrix &avg_state) {
    if (!povm.is_complete()) {
        throw IncompleteInputError();
    }
    TraceProfile profile = trace_profile(povm, avg_state);
    double t = profile.max();
    if (!(t > 1e-12)) {
        throw DegenerateEnsembleError(t);
    }

    AffineOutcomeMap map{.m = povm.size(), .t_max = t, .offsets = {}};
    map.offsets.reserve(map.m);
    for (double tk : profile.values()) {
        // The max entry gets exactly 0.
        map.offsets.push_back(t - tk);
    }

    const double inv_scale = 1 / map.scale();
    const ComplexMatrix id = ComplexMatrix::Identity(
        static_cast<Eigen::Index>(povm.dim()), static_cast<Eigen::Index>(povm.dim()));
    std::vector<HermitianOperator> effects;
    effects.reserve(map.m);
    for (std::size_t k = 0; k < map.m; k++) {
        effects.emplace_back((povm.effect(k).matrix() + map.offsets[k] * id) * inv_scale);
    }
    Povm optimized = validate_povm(std::move(effects));
    if (!optimized.is_complete()) {
        // sum M'_k = (I + sum y_k I) / (m T) = I exactly when sum T_k = 1.
        throw ValidationError("OptimizerError", "optimized POVM failed the completeness check");
    }
    return OptimizationResult{std::move(optimized), std::move(map), std::move(profile)};
}

CompletionResult complete_first(const Povm &povm) {
    if (povm.is_complete()) {
        return {povm, true};
    }
    std::vector<HermitianOperator> effects = povm.effects();
    effects.push_back(HermitianOperator::identity(povm.dim()) - povm.effect_sum());
    return {validate_povm(std::move(effects)), false};
}

std::vector<double> map_probabilities(const AffineOutcomeMap &map, std::span<const double> p) {
    check_length(map, p.size());
    std::vector<double> out(p.size());
    const double s = map.scale();
    for (std::size_t k = 0; k < p.size(); k++) {
        out[k] = (p[k] + map.offsets[k]) / s;
    }
    return out;
}

std::vector<double> unmap_probabilities(const AffineOutcomeMap &map, std::span<const double> p_prime) {
    check_length(map, p_prime.size());
    std::vector<double> out(p_prime.size());
    const double s = map.scale();
    for (std::size_t k = 0; k < p_prime.size(); k++) {
        out[k] = s * p_prime[k] - map.offsets[k];
    }
    return out;
}

}  // namespace darkopt
