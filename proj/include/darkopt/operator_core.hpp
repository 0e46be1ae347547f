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

#ifndef DARKOPT_OPERATOR_CORE_HPP
#define DARKOPT_OPERATOR_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "darkopt/errors.hpp"

namespace darkopt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Absolute tolerance used for hermiticity, PSD and unit-trace checks.
inline constexpr double kDefaultTol = 1e-10;

/// A square complex matrix that is Hermitian within a tolerance.
///
/// The stored matrix is exactly the one supplied; it is not symmetrized.
class HermitianOperator {
   public:
    /// Throws DimensionError for non-square or empty input and
    /// HermiticityError naming the worst (row, col) pair.
    explicit HermitianOperator(ComplexMatrix matrix, double tol = kDefaultTol);

    static HermitianOperator identity(std::size_t dim);
    static HermitianOperator zero(std::size_t dim);
    static HermitianOperator diagonal(std::initializer_list<double> entries);

    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const ComplexMatrix &matrix() const noexcept {
        return matrix_;
    }
    Complex operator()(std::size_t row, std::size_t col) const {
        return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    /// Real trace; the imaginary part of a Hermitian trace is rounding noise.
    double trace() const;
    /// Ascending eigenvalues from a Hermitian eigensolve.
    Eigen::VectorXd eigenvalues() const;
    double min_eigenvalue() const;

    HermitianOperator operator+(const HermitianOperator &other) const;
    HermitianOperator operator-(const HermitianOperator &other) const;
    HermitianOperator operator*(double scale) const;

   private:
    struct Unchecked {};
    HermitianOperator(ComplexMatrix matrix, Unchecked) : matrix_(std::move(matrix)) {
    }

    ComplexMatrix matrix_;
};

/// A Hermitian operator that is PSD and has unit trace.
class DensityMatrix {
   public:
    const HermitianOperator &op() const noexcept {
        return op_;
    }
    const ComplexMatrix &matrix() const noexcept {
        return op_.matrix();
    }
    std::size_t dim() const noexcept {
        return op_.dim();
    }

    /// Maximally mixed state I/n.
    static DensityMatrix maximally_mixed(std::size_t dim);

   private:
    explicit DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
    }
    friend DensityMatrix validate_density(const HermitianOperator &rho, double tol);

    HermitianOperator op_;
};

/// True iff the smallest eigenvalue of `op` is >= -tol.
bool is_psd(const HermitianOperator &op, double tol = kDefaultTol);

/// Tr(a b). Throws DimensionError on mismatch.
double trace_inner(const HermitianOperator &a, const HermitianOperator &b);

/// Checks unit trace (TraceError) and then positivity (PsdError). Never rescales.
DensityMatrix validate_density(const HermitianOperator &rho, double tol = kDefaultTol);

/// Largest absolute entry of a - b.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace darkopt

#endif
