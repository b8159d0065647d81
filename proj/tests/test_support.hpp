// Copyright 2026 The dressed Authors
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

#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "dressed/linops.hpp"

namespace dressed::testing {

inline Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            m(i, j) = Complex(n(rng), n(rng));
        }
    }
    return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Index dim) {
    const Matrix a = random_matrix(rng, dim, dim);
    return 0.5 * (a + a.adjoint());
}

/// Random density matrix of full rank.
inline Matrix random_density(std::mt19937_64& rng, Index dim) {
    const Matrix a = random_matrix(rng, dim, dim);
    Matrix rho = a * a.adjoint();
    return rho / rho.trace();
}

/// Padé scaling-and-squaring exponential, independent of any eigensolver.
inline Matrix expm_pade(const Matrix& m) { return m.exp(); }

/// Plain triple loop, independent of BLAS.
inline Matrix naive_product(const Matrix& a, const Matrix& b) {
    Matrix c = Matrix::Zero(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            for (Index j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

inline double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}
inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace dressed::testing
