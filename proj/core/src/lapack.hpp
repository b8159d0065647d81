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

// Thin LAPACKE wrappers. Internal to the core library.

#include <complex>
#include <string>
#include <utility>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Dense>

#include "dressed/errors.hpp"

namespace dressed::detail {

// The MRRR drivers are used throughout: the divide-and-conquer drivers
// (?heevd, ?stevd) of the OpenBLAS 0.3.20 build shipped with Ubuntu 22.04
// return non-orthogonal eigenvectors above a few hundred rows.

/// In-place Hermitian eigendecomposition. On return `a` holds orthonormal
/// eigenvectors and `w` ascending eigenvalues.
inline void heevr(Eigen::MatrixXcd& a, Eigen::VectorXd& w) {
    const auto n = static_cast<lapack_int>(a.rows());
    w.resize(n);
    if (n == 0) {
        return;
    }
    Eigen::MatrixXcd z(n, n);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, a.data(), n, 0.0, 0.0, 0, 0, 0.0,
                                           &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != n) {
        throw Error("zheevr failed with info=" + std::to_string(info));
    }
    a = std::move(z);
}

/// Symmetric tridiagonal eigendecomposition. `diag` is overwritten with
/// ascending eigenvalues, `z` receives the eigenvectors.
inline void stevr(Eigen::VectorXd& diag, Eigen::VectorXd offdiag, Eigen::MatrixXd& z) {
    const auto n = static_cast<lapack_int>(diag.size());
    z.resize(n, n);
    if (n == 0) {
        return;
    }
    offdiag.conservativeResize(n);
    Eigen::VectorXd w(n);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, diag.data(), offdiag.data(), 0.0, 0.0, 0,
                                           0, 0.0, &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != n) {
        throw Error("dstevr failed with info=" + std::to_string(info));
    }
    diag = std::move(w);
}

}  // namespace dressed::detail
