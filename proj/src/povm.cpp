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

#include "darkopt/povm.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace darkopt {

std::string_view to_string(Completeness c) {
    return c == Completeness::Complete ? "Complete" : "SubNormalized";
}

HermitianOperator Povm::effect_sum() const {
    HermitianOperator total = HermitianOperator::zero(dim_);
    for (const auto &e : effects_) {
        total = total + e;
    }
    return total;
}

Povm validate_povm(std::vector<HermitianOperator> effects, double tol, double psd_tol) {
    if (effects.empty()) {
        throw DimensionError("a POVM needs at least one effect");
    }
    std::size_t n = effects.front().dim();
    for (std::size_t k = 0; k < effects.size(); k++) {
        if (effects[k].dim() != n) {
            std::ostringstream msg;
            msg << "effect " << k << " has dimension " << effects[k].dim() << ", expected " << n;
            throw DimensionError(msg.str());
        }
        double lo = effects[k].min_eigenvalue();
        if (!(lo >= -psd_tol)) {
            throw EffectError(k, lo);
        }
    }

    HermitianOperator total = HermitianOperator::zero(n);
    for (const auto &e : effects) {
        total = total + e;
    }
    HermitianOperator id = HermitianOperator::identity(n);
    if (max_abs_diff(total.matrix(), id.matrix()) <= tol) {
        return Povm(std::move(effects), Completeness::Complete);
    }
    double slack = (id - total).min_eigenvalue();
    if (slack < -tol) {
        throw OvercompleteError(slack);
    }
    return Povm(std::move(effects), Completeness::SubNormalized);
}

std::vector<double> born_probabilities(const Povm &povm, const DensityMatrix &rho) {
    if (povm.dim() != rho.dim()) {
        std::ostringstream msg;
        msg << "POVM dimension " << povm.dim() << " does not match state dimension " << rho.dim();
        throw DimensionError(msg.str());
    }
    std::vector<double> p;
    p.reserve(povm.size());
    for (const auto &e : povm.effects()) {
        double v = trace_inner(e, rho.op());
        if (v < 0 && v >= -kDefaultTol) {
            v = 0;
        } else if (v > 1 && v <= 1 + kDefaultTol) {
            v = 1;
        }
        p.push_back(v);
    }
    return p;
}

Povm computational_basis(std::size_t dim) {
    std::vector<HermitianOperator> effects;
    auto n = static_cast<Eigen::Index>(dim);
    for (Eigen::Index k = 0; k < n; k++) {
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        m(k, k) = 1;
        effects.emplace_back(std::move(m));
    }
    return validate_povm(std::move(effects));
}

Povm sic_povm_qubit() {
    const double s = 1 / std::sqrt(3.0);
    const std::array<std::array<double, 3>, 4> dirs{{
        {s, s, s},
        {s, -s, -s},
        {-s, s, -s},
        {-s, -s, s},
    }};
    const Complex i{0, 1};
    std::vector<HermitianOperator> effects;
    for (const auto &[x, y, z] : dirs) {
        ComplexMatrix m(2, 2);
        // (I + x X + y Y + z Z) / 4
        m(0, 0) = (1 + z) / 4;
        m(1, 1) = (1 - z) / 4;
        m(0, 1) = (x - i * y) / 4.0;
        m(1, 0) = (x + i * y) / 4.0;
        effects.emplace_back(std::move(m));
    }
    return validate_povm(std::move(effects));
}

}  // namespace darkopt
