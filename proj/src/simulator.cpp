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

#include "darkopt/simulator.hpp"

#include <sstream>

#include "darkopt/philox.hpp"
#include "parallel.hpp"

namespace darkopt {

namespace {

ClickRecord run_shard(std::span<const double> cumulative, double epsilon, uint64_t seed, uint64_t shard, uint64_t trials) {
    const std::size_t m = cumulative.size();
    ClickRecord rec;
    rec.counts.assign(m, 0);
    rec.trials = trials;
    PhiloxStream rng(seed, shard);
    for (uint64_t t = 0; t < trials; t++) {
        uint64_t clicks = 0;
        double u = rng.next_double();
        for (std::size_t k = 0; k < m; k++) {
            if (u < cumulative[k]) {
                rec.counts[k]++;
                clicks++;
                break;
            }
        }
        for (std::size_t k = 0; k < m; k++) {
            if (rng.next_double() < epsilon) {
                rec.counts[k]++;
                clicks++;
            }
        }
        rec.total_clicks += clicks;
        rec.no_click_trials += clicks == 0;
    }
    return rec;
}

}  // namespace

ClickRecord &ClickRecord::operator+=(const ClickRecord &other) {
    if (counts.empty()) {
        counts.assign(other.counts.size(), 0);
    }
    if (counts.size() != other.counts.size()) {
        throw DimensionError("cannot merge click records with different outcome counts");
    }
    for (std::size_t k = 0; k < counts.size(); k++) {
        counts[k] += other.counts[k];
    }
    trials += other.trials;
    total_clicks += other.total_clicks;
    no_click_trials += other.no_click_trials;
    return *this;
}

void SimConfig::validate() const {
    if (trials < 1) {
        throw ValidationError("ParameterError", "simulation needs at least one trial");
    }
    if (shards < 1 || shards > trials) {
        std::ostringstream msg;
        msg << "shards must lie in [1, trials], got " << shards;
        throw ValidationError("ParameterError", msg.str());
    }
}

ClickRecord sample_clicks(std::span<const double> signal_probabilities, double epsilon, const SimConfig &cfg) {
    cfg.validate();
    if (signal_probabilities.empty()) {
        throw DimensionError("simulation needs at least one outcome");
    }
    (void)DarkCountModel(epsilon);

    std::vector<double> cumulative;
    cumulative.reserve(signal_probabilities.size());
    double acc = 0;
    for (double q : signal_probabilities) {
        if (!(q >= 0)) {
            throw ValidationError("ProbabilityError", "signal probabilities must be nonnegative");
        }
        acc += q;
        cumulative.push_back(acc);
    }
    if (acc > 1 + kCompletenessTol) {
        throw ValidationError("ProbabilityError", "signal probabilities sum above 1");
    }
    // Rounding in a complete distribution must not leak into "no signal".
    if (acc >= 1 - kCompletenessTol) {
        cumulative.back() = 2;
    }

    std::vector<ClickRecord> parts(cfg.shards);
    detail::parallel_for(cfg.shards, [&](std::size_t s) {
        uint64_t begin = cfg.trials * s / cfg.shards;
        uint64_t end = cfg.trials * (s + 1) / cfg.shards;
        parts[s] = run_shard(cumulative, epsilon, cfg.seed, s, end - begin);
    });

    ClickRecord total;
    for (const auto &p : parts) {
        total += p;
    }
    return total;
}

ClickRecord sample_clicks(const Povm &povm, const DensityMatrix &rho, const DarkCountModel &model, const SimConfig &cfg) {
    auto q = born_probabilities(povm, rho);
    return sample_clicks(q, model.epsilon(), cfg);
}

std::vector<double> empirical_distribution(const ClickRecord &record) {
    if (record.total_clicks == 0) {
        throw ValidationError("EmptyRecordError", "click record has no clicks");
    }
    std::vector<double> out;
    out.reserve(record.counts.size());
    for (uint64_t c : record.counts) {
        out.push_back(static_cast<double>(c) / static_cast<double>(record.total_clicks));
    }
    return out;
}

}  // namespace darkopt
