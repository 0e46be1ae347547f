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

#include <cmath>
#include <sstream>

namespace darkopt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

DensityMatrix density_from(const ComplexMatrix &m) {
    return validate_density(HermitianOperator(m));
}

DensityMatrix pure_state(const Eigen::VectorXcd &psi) {
    return density_from(psi * psi.adjoint());
}

}  // namespace

DiscreteEnsemble::DiscreteEnsemble(std::vector<WeightedState> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw ValidationError("EmptyEnsembleError", "discrete ensemble has no members");
    }
    double total = 0;
    for (std::size_t i = 0; i < members_.size(); i++) {
        const auto &m = members_[i];
        if (!(m.weight >= 0)) {
            std::ostringstream msg;
            msg << "member " << i << " has negative weight " << m.weight;
            throw ValidationError("WeightError", msg.str());
        }
        if (m.state.dim() != members_.front().state.dim()) {
            std::ostringstream msg;
            msg << "member " << i << " has dimension " << m.state.dim() << ", expected "
                << members_.front().state.dim();
            throw DimensionError(msg.str());
        }
        total += m.weight;
    }
    if (!(std::abs(total - 1) <= kDefaultTol)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "ensemble weights sum to " << total << ", expected 1";
        throw ValidationError("WeightError", msg.str());
    }
}

void AmplitudeDampingFamily::validate() const {
    if (!(delta >= 0 && delta <= 1)) {
        std::ostringstream msg;
        msg << "amplitude damping bound delta must lie in [0, 1], got " << delta;
        throw ValidationError("ParameterError", msg.str());
    }
    if (quadrature_points < 2) {
        throw ValidationError("ParameterError", "quadrature_points must be at least 2");
    }
}

DensityMatrix AmplitudeDampingFamily::member(double p) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1 - p;
    return density_from(m);
}

std::size_t ensemble_dim(const Ensemble &ensemble) {
    return std::visit(
        overloaded{
            [](const DiscreteEnsemble &e) { return e.dim(); },
            [](const AmplitudeDampingFamily &) { return std::size_t{2}; },
            [](const UniformFullSpace &u) { return u.dim; },
        },
        ensemble);
}

DensityMatrix average_state(const Ensemble &ensemble) {
    return std::visit(
        overloaded{
            [](const DiscreteEnsemble &e) {
                auto n = static_cast<Eigen::Index>(e.dim());
                ComplexMatrix acc = ComplexMatrix::Zero(n, n);
                for (const auto &m : e.members()) {
                    acc += m.weight * m.state.matrix();
                }
                return density_from(acc);
            },
            [](const AmplitudeDampingFamily &f) {
                f.validate();
                return AmplitudeDampingFamily::member(f.delta / 2);
            },
            [](const UniformFullSpace &u) {
                if (u.dim == 0) {
                    throw DimensionError("uniform ensemble needs dim >= 1");
                }
                return DensityMatrix::maximally_mixed(u.dim);
            },
        },
        ensemble);
}

DensityMatrix trapezoid_average_state(const AmplitudeDampingFamily &family) {
    family.validate();
    if (family.delta == 0) {
        return AmplitudeDampingFamily::member(0);
    }
    int n = family.quadrature_points;
    double h = family.delta / (n - 1);
    ComplexMatrix acc = ComplexMatrix::Zero(2, 2);
    for (int i = 0; i < n; i++) {
        double w = (i == 0 || i == n - 1) ? h / 2 : h;
        double p = family.delta * i / (n - 1);
        acc += w * AmplitudeDampingFamily::member(p).matrix();
    }
    return density_from(acc / family.delta);
}

std::vector<DensityMatrix> probe_states(const Ensemble &ensemble) {
    return std::visit(
        overloaded{
            [](const DiscreteEnsemble &e) {
                std::vector<DensityMatrix> out;
                for (const auto &m : e.members()) {
                    out.push_back(m.state);
                }
                return out;
            },
            [](const AmplitudeDampingFamily &f) {
                f.validate();
                std::vector<DensityMatrix> out;
                for (int i = 0; i <= 10; i++) {
                    out.push_back(AmplitudeDampingFamily::member(f.delta * i / 10.0));
                }
                return out;
            },
            [](const UniformFullSpace &u) {
                auto n = static_cast<Eigen::Index>(u.dim);
                std::vector<DensityMatrix> out;
                const double r = 1 / std::sqrt(2.0);
                for (Eigen::Index i = 0; i < n; i++) {
                    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
                    psi(i) = 1;
                    out.push_back(pure_state(psi));
                }
                for (Eigen::Index i = 0; i < n; i++) {
                    for (Eigen::Index j = i + 1; j < n; j++) {
                        Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(n);
                        plus(i) = r;
                        plus(j) = r;
                        out.push_back(pure_state(plus));
                        Eigen::VectorXcd plus_i = Eigen::VectorXcd::Zero(n);
                        plus_i(i) = r;
                        plus_i(j) = Complex(0, r);
                        out.push_back(pure_state(plus_i));
                    }
                }
                out.push_back(DensityMatrix::maximally_mixed(u.dim));
                return out;
            },
        },
        ensemble);
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops) : ops_(std::move(kraus_ops)) {
    if (ops_.empty()) {
        throw ValidationError("ChannelError", "channel needs at least one Kraus operator");
    }
    Eigen::Index n = ops_.front().rows();
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (const auto &e : ops_) {
        if (e.rows() != n || e.cols() != n) {
            throw DimensionError("Kraus operators must be square and of equal dimension");
        }
        acc += e.adjoint() * e;
    }
    double dev = max_abs_diff(acc, ComplexMatrix::Identity(n, n));
    if (!(dev <= 1e-9)) {
        std::ostringstream msg;
        msg << "channel is not trace preserving: max|sum E^dag E - I| = " << dev;
        throw ValidationError("ChannelError", msg.str());
    }
}

KrausChannel amplitude_damping_channel(double p) {
    if (!(p >= 0 && p <= 1)) {
        std::ostringstream msg;
        msg << "damping strength p must lie in [0, 1], got " << p;
        throw ValidationError("ParameterError", msg.str());
    }
    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
    e0(0, 0) = 1;
    e0(1, 1) = std::sqrt(1 - p);
    ComplexMatrix e1 = ComplexMatrix::Zero(2, 2);
    e1(0, 1) = std::sqrt(p);
    return KrausChannel({e0, e1});
}

DensityMatrix apply_channel(const KrausChannel &channel, const DensityMatrix &rho) {
    if (channel.dim() != rho.dim()) {
        throw DimensionError("channel and state dimensions differ");
    }
    auto n = static_cast<Eigen::Index>(rho.dim());
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (const auto &e : channel.kraus_ops()) {
        out += e * rho.matrix() * e.adjoint();
    }
    // Kraus sums are Hermitian up to rounding; symmetrize before validating.
    out = (out + out.adjoint()) / 2.0;
    return density_from(out);
}

}  // namespace darkopt
