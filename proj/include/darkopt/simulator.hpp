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

#ifndef DARKOPT_SIMULATOR_HPP
#define DARKOPT_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "darkopt/darkcount.hpp"

namespace darkopt {

/// Click tallies from a batch of measurement windows ("trials").
struct ClickRecord {
    std::vector<uint64_t> counts;
    uint64_t trials = 0;
    uint64_t total_clicks = 0;
    uint64_t no_click_trials = 0;

    ClickRecord &operator+=(const ClickRecord &other);
    bool operator==(const ClickRecord &) const = default;
};

struct SimConfig {
    uint64_t trials = 1;
    uint64_t seed = 0;
    uint64_t shards = 1;

    /// Throws ValidationError unless trials >= 1 and 1 <= shards <= trials.
    void validate() const;
};

/// Simulates `cfg.trials` windows. In each window the state produces at most
/// one signal click drawn from the Born probabilities (none with probability
/// 1 - sum q_k for sub-normalized POVMs), and every detector independently
/// dark-clicks with probability epsilon. Every click counts, so one window can
/// add several counts, including two on the same detector.
///
/// Trials are split into `shards` contiguous blocks; shard s draws from the
/// Philox sub-stream (seed, s). Per trial the stream supplies one uniform for
/// the signal followed by one per detector for dark clicks. Output is a pure
/// function of (povm, rho, model, cfg).
ClickRecord sample_clicks(const Povm &povm, const DensityMatrix &rho, const DarkCountModel &model, const SimConfig &cfg);

/// Same as sample_clicks but with explicit per-trial signal probabilities.
ClickRecord sample_clicks(std::span<const double> signal_probabilities, double epsilon, const SimConfig &cfg);

/// counts_k / total_clicks. Throws ValidationError when there are no clicks.
std::vector<double> empirical_distribution(const ClickRecord &record);

}  // namespace darkopt

#endif
