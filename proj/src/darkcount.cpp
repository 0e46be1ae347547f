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

#include "darkopt/darkcount.hpp"

#include <cmath>
#include <sstream>

namespace darkopt {

namespace {

constexpr double kZeroEffect = 1e-12;

void require_nonzero(const TraceProfile &profile) {
    for (std::size_t k = 0; k < profile.size(); k++) {
        if (!(profile[k] > kZeroEffect)) {
            throw ZeroEffectError(k, profile[k]);
        }
    }
}

}  // namespace

DarkCountModel::DarkCountModel(double epsilon, std::optional<std::pair<double, double>> range)
    : epsilon_(epsilon), range_(range) {
    if (!(epsilon >= 0 && epsilon < 0.5)) {
        std::ostringstream msg;
        msg << "dark count rate must satisfy 0 <= epsilon < 0.5, got " << epsilon;
        throw ValidationError("ParameterError", msg.str());
    }
    if (range_ && !(range_->first <= epsilon && epsilon <= range_->second)) {
        std::ostringstream msg;
        msg << "dark count rate " << epsilon << " lies outside [" << range_->first << ", " << range_->second << "]";
        throw ValidationError("ParameterError", msg.str());
    }
}

LifetimeModel::LifetimeModel(double clicks_per_detector) : clicks_(clicks_per_detector) {
    if (!(clicks_per_detector > 0)) {
        throw ValidationError("ParameterError", "detector lifetime must be positive");
    }
}

std::vector<double> observed_distribution(const TraceProfile &profile, const DarkCountModel &model) {
    if (!profile.is_normalized()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "observed distribution needs a complete profile, sum is " << profile.sum();
        throw ValidationError("ProfileError", msg.str());
    }
    const double eps = model.epsilon();
    const double denom = 1 + static_cast<double>(profile.size()) * eps;
    std::vector<double> out;
    out.reserve(profile.size());
    for (double t : profile.values()) {
        out.push_back((t + eps) / denom);
    }
    return out;
}

std::vector<double> inflation_ratios(const TraceProfile &profile, const DarkCountModel &model) {
    return subtraction_residual(profile, model.epsilon(), 0);
}

double gm_figure_of_merit(const TraceProfile &profile, const DarkCountModel &model) {
    require_nonzero(profile);
    if (!(model.epsilon() > 0)) {
        throw ValidationError("ParameterError", "geometric-mean merit needs epsilon > 0");
    }
    double log_sum = 0;
    for (double t : profile.values()) {
        log_sum += std::log(model.epsilon() / t);
    }
    return std::exp(log_sum / static_cast<double>(profile.size()));
}

std::vector<double> subtraction_residual(const TraceProfile &profile, double epsilon, double eta) {
    require_nonzero(profile);
    std::vector<double> out;
    out.reserve(profile.size());
    for (double t : profile.values()) {
        out.push_back(1 + (epsilon - eta) / t);
    }
    return out;
}

double lifetime_capacity(const TraceProfile &profile, const LifetimeModel &model) {
    double t = profile.max();
    if (!(t > 0)) {
        throw ValidationError("ProfileError", "lifetime capacity needs a profile with a positive entry");
    }
    return model.clicks_per_detector() / t;
}

}  // namespace darkopt
