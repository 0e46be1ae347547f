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

#include "darkopt/tomography.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "darkopt/philox.hpp"
#include "parallel.hpp"

namespace darkopt {

namespace {

struct Setup {
    Povm basis;
    OptimizationResult rebalanced;
    DensityMatrix received;
};

Setup make_setup(const ExperimentSpec &spec) {
    Povm basis = computational_basis(2);
    auto avg = average_state(AmplitudeDampingFamily{.delta = spec.delta});
    auto rebalanced = optimize(basis, avg);
    return Setup{std::move(basis), std::move(rebalanced), AmplitudeDampingFamily::member(spec.true_p)};
}

double clip(double v, double hi) {
    return std::clamp(v, 0.0, hi);
}

double subtract_estimate(double freq0, double eta) {
    return freq0 * (1 + 2 * eta) - eta;
}

}  // namespace

void ExperimentSpec::validate() const {
    std::ostringstream msg;
    if (!(delta >= 0 && delta <= 1)) {
        msg << "delta must lie in [0, 1], got " << delta;
    } else if (!(true_p >= 0 && true_p <= delta)) {
        msg << "true p must lie in [0, delta], got " << true_p;
    } else if (!(epsilon >= 0 && epsilon < 0.5)) {
        msg << "epsilon must lie in [0, 0.5), got " << epsilon;
    } else if (!(eta >= 0 && eta < 0.5)) {
        msg << "eta must lie in [0, 0.5), got " << eta;
    } else if (trials < 1 || repetitions < 1) {
        msg << "trials and repetitions must be positive";
    } else {
        return;
    }
    throw ValidationError("ParameterError", msg.str());
}

EstimatorReport EstimatorReport::from_estimates(std::string name, std::vector<double> estimates, double true_p) {
    EstimatorReport r{std::move(name), std::move(estimates), 0, 0};
    if (r.estimates.empty()) {
        return r;
    }
    double sum = 0;
    double sq = 0;
    for (double e : r.estimates) {
        sum += e;
        sq += (e - true_p) * (e - true_p);
    }
    auto n = static_cast<double>(r.estimates.size());
    r.bias = sum / n - true_p;
    r.mse = sq / n;
    return r;
}

uint64_t repetition_seed(uint64_t seed, uint64_t rep) {
    // Counter word 3 = 0x5EED keeps these blocks disjoint from simulator
    // streams with small shard indices.
    auto out = Philox4x32::block(
        {static_cast<uint32_t>(rep), static_cast<uint32_t>(rep >> 32), 0, 0x5EEDu},
        {static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)});
    return (uint64_t{out[1]} << 32) | out[0];
}

std::vector<EstimatorReport> run_experiment(const ExperimentSpec &spec) {
    spec.validate();
    Setup setup = make_setup(spec);
    const auto q_raw = born_probabilities(setup.basis, setup.received);
    const auto q_opt = born_probabilities(setup.rebalanced.optimized, setup.received);

    const auto reps = static_cast<std::size_t>(spec.repetitions);
    std::vector<std::array<double, 3>> est(reps);
    detail::parallel_for(reps, [&](std::size_t r) {
        SimConfig cfg{.trials = spec.trials, .seed = repetition_seed(spec.seed, r), .shards = 1};
        auto raw_rec = sample_clicks(q_raw, spec.epsilon, cfg);
        auto opt_rec = sample_clicks(q_opt, spec.epsilon, cfg);
        double freq0 = empirical_distribution(raw_rec)[0];
        auto opt_freq = empirical_distribution(opt_rec);
        double opt0 = unmap_probabilities(setup.rebalanced.map, opt_freq)[0];
        est[r] = {
            clip(freq0, spec.delta),
            clip(subtract_estimate(freq0, spec.eta), spec.delta),
            clip(opt0, spec.delta),
        };
    });

    const std::array<const char *, 3> names{kRawPipeline, kSubtractPipeline, kOptimizedPipeline};
    std::vector<EstimatorReport> reports;
    for (std::size_t i = 0; i < names.size(); i++) {
        std::vector<double> values(reps);
        for (std::size_t r = 0; r < reps; r++) {
            values[r] = est[r][i];
        }
        reports.push_back(EstimatorReport::from_estimates(names[i], std::move(values), spec.true_p));
    }
    return reports;
}

std::vector<double> predicted_estimates(const ExperimentSpec &spec) {
    spec.validate();
    Setup setup = make_setup(spec);
    const double eps = spec.epsilon;
    auto observed = [&](const Povm &povm) {
        auto q = born_probabilities(povm, setup.received);
        std::vector<double> f;
        for (double v : q) {
            f.push_back((v + eps) / (1 + static_cast<double>(q.size()) * eps));
        }
        return f;
    };
    double raw = observed(setup.basis)[0];
    double opt = unmap_probabilities(setup.rebalanced.map, observed(setup.rebalanced.optimized))[0];
    return {raw, subtract_estimate(raw, spec.eta), opt};
}

InflationComparison inflation_comparison(const ExperimentSpec &spec) {
    spec.validate();
    Setup setup = make_setup(spec);
    auto avg = average_state(AmplitudeDampingFamily{.delta = spec.delta});
    InflationComparison out{
        .raw_profile = setup.rebalanced.original_profile,
        .optimized_profile = trace_profile(setup.rebalanced.optimized, avg),
    };
    DarkCountModel model(spec.epsilon);
    auto max_of = [](const std::vector<double> &v) { return *std::max_element(v.begin(), v.end()); };
    out.raw_max_inflation = max_of(inflation_ratios(out.raw_profile, model));
    out.optimized_max_inflation = max_of(inflation_ratios(out.optimized_profile, model));
    if (spec.epsilon > 0) {
        out.raw_gm = gm_figure_of_merit(out.raw_profile, model);
        out.optimized_gm = gm_figure_of_merit(out.optimized_profile, model);
    }
    // Rounding slack only; the rebalanced profile is (1/2, 1/2).
    constexpr double slack = 1e-12;
    if (out.optimized_max_inflation > out.raw_max_inflation + slack || out.optimized_gm > out.raw_gm + slack) {
        throw ValidationError("InflationError", "rebalanced measurement is more dark-count sensitive than the original");
    }
    return out;
}

}  // namespace darkopt
