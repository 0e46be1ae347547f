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

#include "darkopt/operator_core.hpp"

#include <cmath>
#include <sstream>

namespace darkopt {

HermitianOperator::HermitianOperator(ComplexMatrix matrix, double tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        std::ostringstream msg;
        msg << "operator must be a non-empty square matrix, got " << matrix_.rows() << "x" << matrix_.cols();
        throw DimensionError(msg.str());
    }
    double worst = 0;
    Eigen::Index wr = 0, wc = 0;
    for (Eigen::Index r = 0; r < matrix_.rows(); r++) {
        for (Eigen::Index c = r; c < matrix_.cols(); c++) {
            double d = std::abs(matrix_(r, c) - std::conj(matrix_(c, r)));
            if (d > worst || std::isnan(d)) {
                worst = d;
                wr = r;
                wc = c;
            }
        }
    }
    if (!(worst <= tol)) {
        throw HermiticityError(static_cast<std::size_t>(wr), static_cast<std::size_t>(wc), worst);
    }
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
    auto n = static_cast<Eigen::Index>(dim);
    return HermitianOperator(ComplexMatrix::Identity(n, n), Unchecked{});
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
    auto n = static_cast<Eigen::Index>(dim);
    return HermitianOperator(ComplexMatrix::Zero(n, n), Unchecked{});
}

HermitianOperator HermitianOperator::diagonal(std::initializer_list<double> entries) {
    auto n = static_cast<Eigen::Index>(entries.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    Eigen::Index i = 0;
    for (double e : entries) {
        m(i, i) = e;
        i++;
    }
    return HermitianOperator(std::move(m));
}

double HermitianOperator::trace() const {
    return matrix_.trace().real();
}

Eigen::VectorXd HermitianOperator::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double HermitianOperator::min_eigenvalue() const {
    return eigenvalues()(0);
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator &other) const {
    if (other.dim() != dim()) {
        throw DimensionError("cannot add operators of different dimension");
    }
    return HermitianOperator(matrix_ + other.matrix_, Unchecked{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator &other) const {
    if (other.dim() != dim()) {
        throw DimensionError("cannot subtract operators of different dimension");
    }
    return HermitianOperator(matrix_ - other.matrix_, Unchecked{});
}

HermitianOperator HermitianOperator::operator*(double scale) const {
    return HermitianOperator(matrix_ * scale, Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(HermitianOperator::identity(dim) * (1.0 / static_cast<double>(dim)));
}

bool is_psd(const HermitianOperator &op, double tol) {
    return op.min_eigenvalue() >= -tol;
}

double trace_inner(const HermitianOperator &a, const HermitianOperator &b) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << "trace_inner dimension mismatch: " << a.dim() << " vs " << b.dim();
        throw DimensionError(msg.str());
    }
    // Tr(AB) = sum_ij A_ij B_ji without forming the product.
    Complex t = (a.matrix().array() * b.matrix().transpose().array()).sum();
    if (std::abs(t.imag()) > kDefaultTol) {
        std::ostringstream msg;
        msg << "Tr(ab) has imaginary part " << t.imag() << "; inputs are not Hermitian";
        throw ValidationError("HermiticityError", msg.str());
    }
    return t.real();
}

DensityMatrix validate_density(const HermitianOperator &rho, double tol) {
    double tr = rho.trace();
    if (!(std::abs(tr - 1) <= tol)) {
        throw TraceError(tr);
    }
    double lo = rho.min_eigenvalue();
    if (!(lo >= -tol)) {
        throw PsdError(lo);
    }
    return DensityMatrix(rho);
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff dimension mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace darkopt
