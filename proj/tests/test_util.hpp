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

#ifndef DARKOPT_TESTS_TEST_UTIL_HPP
#define DARKOPT_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>
#include <vector>

#include "darkopt/ensembles.hpp"
#include "darkopt/povm.hpp"

namespace darkopt::testing {

/// Fixed seed so every randomized test is reproducible.
inline std::mt19937_64 &rng() {
    static std::mt19937_64 engine(20260115);
    return engine;
}

inline ComplexMatrix random_gaussian(std::size_t n, std::mt19937_64 &gen = rng()) {
    std::normal_distribution<double> g;
    auto k = static_cast<Eigen::Index>(n);
    ComplexMatrix m(k, k);
    for (Eigen::Index r = 0; r < k; r++) {
        for (Eigen::Index c = 0; c < k; c++) {
            m(r, c) = Complex(g(gen), g(gen));
        }
    }
    return m;
}

inline HermitianOperator random_hermitian(std::size_t n, std::mt19937_64 &gen = rng()) {
    ComplexMatrix g = random_gaussian(n, gen);
    return HermitianOperator((g + g.adjoint()) / 2.0);
}

/// G G^dagger / Tr(G G^dagger), optionally rank-deficient.
inline DensityMatrix random_density(std::size_t n, std::mt19937_64 &gen = rng()) {
    ComplexMatrix g = random_gaussian(n, gen);
    std::uniform_int_distribution<int> rank_pick(1, static_cast<int>(n));
    int rank = rank_pick(gen);
    ComplexMatrix h = g.leftCols(rank);
    ComplexMatrix rho = h * h.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()) / 2.0;
    return validate_density(HermitianOperator(rho));
}

/// S^{-1/2} A_k S^{-1/2} for random PSD A_k with S = sum A_k.
inline Povm random_complete_povm(std::size_t n, std::size_t m, std::mt19937_64 &gen = rng()) {
    auto k = static_cast<Eigen::Index>(n);
    std::vector<ComplexMatrix> parts;
    ComplexMatrix total;
    std::uniform_int_distribution<int> rank_pick(1, static_cast<int>(n));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es;
    do {
        // Redraw until the parts span the space, otherwise S is singular.
        parts.clear();
        total = ComplexMatrix::Zero(k, k);
        for (std::size_t i = 0; i < m; i++) {
            ComplexMatrix g = random_gaussian(n, gen).leftCols(rank_pick(gen));
            parts.push_back(g * g.adjoint());
            total += parts.back();
        }
        es.compute(total);
    } while (es.eigenvalues().minCoeff() < 1e-2);
    ComplexMatrix inv_sqrt = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                             es.eigenvectors().adjoint();
    std::vector<HermitianOperator> effects;
    for (const auto &a : parts) {
        ComplexMatrix e = inv_sqrt * a * inv_sqrt;
        effects.emplace_back((e + e.adjoint()) / 2.0);
    }
    return validate_povm(std::move(effects));
}

inline DiscreteEnsemble random_discrete_ensemble(std::size_t n, std::mt19937_64 &gen = rng()) {
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_real_distribution<double> w(0.05, 1.0);
    int c = count(gen);
    std::vector<double> weights;
    double total = 0;
    for (int i = 0; i < c; i++) {
        weights.push_back(w(gen));
        total += weights.back();
    }
    std::vector<WeightedState> members;
    for (int i = 0; i < c; i++) {
        members.push_back({weights[i] / total, random_density(n, gen)});
    }
    return DiscreteEnsemble(std::move(members));
}

/// Uniform sample from the probability simplex of size m.
inline std::vector<double> random_simplex(std::size_t m, std::mt19937_64 &gen = rng()) {
    std::exponential_distribution<double> e;
    std::vector<double> p(m);
    double total = 0;
    for (auto &v : p) {
        v = e(gen);
        total += v;
    }
    for (auto &v : p) {
        v /= total;
    }
    return p;
}

/// Eigenvalues of a 2x2 Hermitian matrix from the characteristic polynomial.
inline std::pair<double, double> eigenvalues_2x2(const ComplexMatrix &m) {
    double a = m(0, 0).real();
    double d = m(1, 1).real();
    double b2 = std::norm(m(0, 1));
    double mean = (a + d) / 2;
    double rad = std::sqrt((a - d) * (a - d) / 4 + b2);
    return {mean - rad, mean + rad};
}

/// Max |x_k - y_k|.
inline double max_diff(const std::vector<double> &x, const std::vector<double> &y) {
    double worst = 0;
    for (std::size_t k = 0; k < x.size(); k++) {
        worst = std::max(worst, std::abs(x[k] - y[k]));
    }
    return x.size() == y.size() ? worst : INFINITY;
}

inline HermitianOperator real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    auto n = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix m(n, n);
    Eigen::Index r = 0;
    for (const auto &row : rows) {
        Eigen::Index c = 0;
        for (double v : row) {
            m(r, c++) = v;
        }
        r++;
    }
    return HermitianOperator(m);
}

}  // namespace darkopt::testing

#endif
