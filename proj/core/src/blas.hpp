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

// Complex matrix products routed to OpenBLAS zgemm. Eigen's own kernels
// handle everything else: the real dgemm of OpenBLAS 0.3.20 returns wrong
// results above 128 rows on AVX-512 hosts, so EIGEN_USE_BLAS is not used.

#include <cblas.h>

#include <Eigen/Dense>

namespace dressed::detail {

enum class Trans { none, adjoint };

/// op(a) · op(b).
inline Eigen::MatrixXcd gemm(const Eigen::MatrixXcd& a, Trans ta, const Eigen::MatrixXcd& b, Trans tb) {
    const Eigen::Index m = ta == Trans::none ? a.rows() : a.cols();
    const Eigen::Index k = ta == Trans::none ? a.cols() : a.rows();
    const Eigen::Index n = tb == Trans::none ? b.cols() : b.rows();
    if (m * n * k < 32 * 32 * 32) {
        if (ta == Trans::none) {
            return tb == Trans::none ? Eigen::MatrixXcd(a * b) : Eigen::MatrixXcd(a * b.adjoint());
        }
        return tb == Trans::none ? Eigen::MatrixXcd(a.adjoint() * b) : Eigen::MatrixXcd(a.adjoint() * b.adjoint());
    }
    Eigen::MatrixXcd c(m, n);
    const std::complex<double> one(1.0, 0.0);
    const std::complex<double> zero(0.0, 0.0);
    cblas_zgemm(CblasColMajor, ta == Trans::none ? CblasNoTrans : CblasConjTrans,
                tb == Trans::none ? CblasNoTrans : CblasConjTrans, static_cast<blasint>(m), static_cast<blasint>(n),
                static_cast<blasint>(k), &one, a.data(), static_cast<blasint>(a.rows()), b.data(),
                static_cast<blasint>(b.rows()), &zero, c.data(), static_cast<blasint>(m));
    return c;
}

inline Eigen::MatrixXcd gemm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return gemm(a, Trans::none, b, Trans::none);
}

}  // namespace dressed::detail
