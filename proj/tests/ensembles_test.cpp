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

#include "darkopt/ensembles.hpp"

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace darkopt;

namespace {

DensityMatrix diag_state(double a, double b) {
    return validate_density(HermitianOperator::diagonal({a, b}));
}

}  // namespace

TEST(ensembles, average_state_examples) {
    auto u = average_state(UniformFullSpace{2});
    ASSERT_LE(max_abs_diff(u.matrix(), HermitianOperator::diagonal({0.5, 0.5}).matrix()), 1e-15);

    auto ad = average_state(AmplitudeDampingFamily{.delta = 0.05});
    ASSERT_NEAR(ad.matrix()(0, 0).real(), 0.025, 1e-15);
    ASSERT_NEAR(ad.matrix()(1, 1).real(), 0.975, 1e-15);
    ASSERT_EQ(ad.matrix()(0, 1), Complex(0, 0));

    DiscreteEnsemble d({{0.5, diag_state(1, 0)}, {0.5, diag_state(0, 1)}});
    ASSERT_LE(max_abs_diff(average_state(d).matrix(), u.matrix()), 1e-15);
}

TEST(ensembles, discrete_validation) {
    ASSERT_THROW(DiscreteEnsemble({}), ValidationError);
    ASSERT_THROW(DiscreteEnsemble({{0.7, diag_state(1, 0)}, {0.7, diag_state(0, 1)}}), ValidationError);
    ASSERT_THROW(DiscreteEnsemble({{1.5, diag_state(1, 0)}, {-0.5, diag_state(0, 1)}}), ValidationError);
    ASSERT_THROW(
        DiscreteEnsemble({{0.5, diag_state(1, 0)}, {0.5, DensityMatrix::maximally_mixed(3)}}), DimensionError);
    ASSERT_THROW(average_state(AmplitudeDampingFamily{.delta = 1.5}), ValidationError);
}

TEST(ensembles, trapezoid_matches_closed_form) {
    for (double delta : {0.0, 0.01, 0.05, 0.3, 1.0}) {
        AmplitudeDampingFamily fam{.delta = delta};
        ASSERT_EQ(fam.quadrature_points, 201);
        auto trap = trapezoid_average_state(fam);
        ASSERT_LE(max_abs_diff(trap.matrix(), average_state(fam).matrix()), 1e-8) << delta;
    }
}

TEST(ensembles, two_member_average_is_convex_combination) {
    for (int trial = 0; trial < 50; trial++) {
        std::size_t n = 2 + trial % 4;
        auto a = darkopt::testing::random_density(n);
        auto b = darkopt::testing::random_density(n);
        double w = (trial + 0.5) / 50.0;
        auto avg = average_state(DiscreteEnsemble({{w, a}, {1 - w, b}}));
        ComplexMatrix expected = w * a.matrix() + (1 - w) * b.matrix();
        ASSERT_LE(max_abs_diff(avg.matrix(), expected), 1e-12);
    }
}

TEST(ensembles, amplitude_damping_channel_operators) {
    auto id = amplitude_damping_channel(0);
    ASSERT_LE(max_abs_diff(id.kraus_ops()[0], ComplexMatrix::Identity(2, 2)), 0);
    ASSERT_LE(id.kraus_ops()[1].cwiseAbs().maxCoeff(), 0);

    auto full = amplitude_damping_channel(1);
    ASSERT_EQ(full.kraus_ops()[0](1, 1), Complex(0, 0));
    ASSERT_EQ(full.kraus_ops()[1](0, 1), Complex(1, 0));

    auto weak = amplitude_damping_channel(0.02);
    ASSERT_NEAR(weak.kraus_ops()[0](1, 1).real(), std::sqrt(0.98), 1e-15);
    ASSERT_NEAR(weak.kraus_ops()[1](0, 1).real(), std::sqrt(0.02), 1e-15);

    ASSERT_THROW(amplitude_damping_channel(-0.1), ValidationError);
    ASSERT_THROW(amplitude_damping_channel(1.1), ValidationError);
}

TEST(ensembles, apply_channel_examples) {
    for (double p : {0.0, 0.02, 0.5, 1.0}) {
        auto ch = amplitude_damping_channel(p);
        auto out = apply_channel(ch, diag_state(0, 1));
        ASSERT_NEAR(out.matrix()(0, 0).real(), p, 1e-15);
        ASSERT_NEAR(out.matrix()(1, 1).real(), 1 - p, 1e-15);
        ASSERT_LE(max_abs_diff(apply_channel(ch, diag_state(1, 0)).matrix(), diag_state(1, 0).matrix()), 1e-15);
    }
    auto rho = darkopt::testing::random_density(2);
    ASSERT_LE(max_abs_diff(apply_channel(amplitude_damping_channel(0), rho).matrix(), rho.matrix()), 1e-15);
}

TEST(ensembles, received_state_is_family_member) {
    auto out = apply_channel(amplitude_damping_channel(0.03), diag_state(0, 1));
    ASSERT_LE(max_abs_diff(out.matrix(), AmplitudeDampingFamily::member(0.03).matrix()), 1e-15);
}

TEST(ensembles, channel_preserves_trace_and_positivity) {
    auto &gen = darkopt::testing::rng();
    std::uniform_real_distribution<double> unit;
    for (int trial = 0; trial < 100; trial++) {
        auto rho = darkopt::testing::random_density(2);
        auto out = apply_channel(amplitude_damping_channel(unit(gen)), rho);
        ASSERT_NEAR(out.op().trace(), 1, 1e-10);
        ASSERT_GE(out.op().min_eigenvalue(), -1e-10);
    }
}

TEST(ensembles, channel_rejects_non_trace_preserving) {
    ComplexMatrix e = ComplexMatrix::Identity(2, 2) * 0.9;
    ASSERT_THROW(KrausChannel({e}), ValidationError);
}

TEST(ensembles, probe_states) {
    ASSERT_EQ(probe_states(AmplitudeDampingFamily{.delta = 0.05}).size(), 11u);
    auto probes = probe_states(AmplitudeDampingFamily{.delta = 0.05});
    ASSERT_NEAR(probes.front().matrix()(0, 0).real(), 0, 1e-15);
    ASSERT_NEAR(probes.back().matrix()(0, 0).real(), 0.05, 1e-15);

    // n^2 spanning pure states plus I/n.
    for (std::size_t n : {1u, 2u, 3u, 4u}) {
        auto u = probe_states(UniformFullSpace{n});
        ASSERT_EQ(u.size(), n * n + 1);
        // Spanning check: the probes' real vectorizations have rank n^2.
        Eigen::MatrixXd span(2 * n * n, u.size());
        for (std::size_t i = 0; i < u.size(); i++) {
            Eigen::Map<const Eigen::VectorXcd> v(u[i].matrix().data(), static_cast<Eigen::Index>(n * n));
            span.col(static_cast<Eigen::Index>(i)) << v.real(), v.imag();
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(span);
        ASSERT_EQ(static_cast<std::size_t>(lu.rank()), n * n);
    }

    DiscreteEnsemble d({{0.5, diag_state(1, 0)}, {0.5, diag_state(0, 1)}});
    ASSERT_EQ(probe_states(d).size(), 2u);
}

TEST(ensembles, average_is_valid_density_on_random_input) {
    for (int trial = 0; trial < 50; trial++) {
        auto ens = darkopt::testing::random_discrete_ensemble(2 + trial % 5);
        auto avg = average_state(ens);
        ASSERT_NEAR(avg.op().trace(), 1, 1e-10);
        ASSERT_GE(avg.op().min_eigenvalue(), -1e-10);
    }
}
