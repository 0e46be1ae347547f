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

#ifndef DARKOPT_TOMOGRAPHY_HPP
#define DARKOPT_TOMOGRAPHY_HPP

#include <string>
#include <vector>

#include "darkopt/simulator.hpp"

namespace darkopt {

/// Estimating the damping strength p from received states diag(p, 1 - p),
/// p in [0, delta], measured by detectors with dark rate epsilon.
struct ExperimentSpec {
    double delta = 0.05;
    double true_p = 0.02;
    double epsilon = 1e-4;
    /// Dark rate assumed by the subtraction estimator.
    double eta = 0;
    uint64_t trials = 1'000'000;
    uint64_t seed = 0;
    uint64_t repetitions = 100;

    void validate() const;
};

struct EstimatorReport {
    std::string estimator_name;
    std::vector<double> estimates;
    double bias = 0;
    double mse = 0;

    /// Fills bias and mse from the estimates.
    static EstimatorReport from_estimates(std::string name, std::vector<double> estimates, double true_p);
};

inline constexpr const char *kRawPipeline = "RAW";
inline constexpr const char *kSubtractPipeline = "SUBTRACT";
inline constexpr const char *kOptimizedPipeline = "OPTIMIZED";

/// Runs RAW, SUBTRACT and OPTIMIZED pipelines, in that order.
///
/// RAW reads p from the click frequency of |0><0| under the computational
/// basis. SUBTRACT inverts the dark-count formula with eta in place of the
/// true rate: freq * (1 + 2 eta) - eta, on the same clicks as RAW. OPTIMIZED
/// measures with the basis rebalanced against the family average and maps the
/// click frequencies back through the inverse outcome map. Estimates are
/// clipped to [0, delta]. Repetition r uses one seed, derived from (seed, r),
/// for both measurements.
std::vector<EstimatorReport> run_experiment(const ExperimentSpec &spec);

/// Large-sample mean of each pipeline's (unclipped) estimate, in run_experiment
/// order, from the ratio of expected click counts.
std::vector<double> predicted_estimates(const ExperimentSpec &spec);

struct InflationComparison {
    TraceProfile raw_profile;
    TraceProfile optimized_profile;
    double raw_max_inflation = 0;
    double optimized_max_inflation = 0;
    /// Zero when epsilon is zero.
    double raw_gm = 0;
    double optimized_gm = 0;
};

/// Analytic dark-count sensitivity of the raw and rebalanced measurements
/// against the family average. Throws ValidationError if the rebalanced
/// values ever exceed the raw ones.
InflationComparison inflation_comparison(const ExperimentSpec &spec);

/// Seed for repetition `rep`, derived from the experiment seed through Philox.
uint64_t repetition_seed(uint64_t seed, uint64_t rep);

}  // namespace darkopt

#endif
