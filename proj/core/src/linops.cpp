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

#include "dressed/linops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dressed/errors.hpp"
#include "blas.hpp"
#include "lapack.hpp"

namespace dressed {

namespace {

using detail::Trans;

std::vector<Subsystem> qubit_entries(std::size_t n_qubits) {
    return std::vector<Subsystem>(n_qubits, Subsystem{SubsystemRole::qubit, 2});
}

void require_same_layout(const SpaceLayout& a, const SpaceLayout& b, const char* what) {
    if (!(a == b)) {
        throw DimensionMismatch(std::string(what) + ": operands act on different layouts");
    }
}

}  // namespace

SpaceLayout::SpaceLayout(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
    if (subsystems_.empty()) {
        throw InvalidArgument("SpaceLayout needs at least one subsystem");
    }
    bool seen_mode = false;
    for (const auto& s : subsystems_) {
        if (s.dim < 2) {
            throw InvalidArgument("SpaceLayout subsystem dimension must be >= 2, got " + std::to_string(s.dim));
        }
        if (s.role == SubsystemRole::qubit) {
            if (s.dim != 2) {
                throw InvalidArgument("qubit subsystems have dimension 2");
            }
            if (seen_mode) {
                throw InvalidArgument("qubit subsystems must precede mode subsystems");
            }
        } else {
            seen_mode = true;
        }
        if (total_dim_ > std::numeric_limits<Index>::max() / s.dim) {
            throw InvalidArgument("SpaceLayout total dimension overflows");
        }
        total_dim_ *= s.dim;
    }
}

SpaceLayout SpaceLayout::qubits_and_modes(std::size_t n_qubits, std::span<const Index> mode_dims) {
    auto entries = qubit_entries(n_qubits);
    for (Index d : mode_dims) {
        entries.push_back({SubsystemRole::mode, d});
    }
    return SpaceLayout(std::move(entries));
}

SpaceLayout SpaceLayout::qubits(std::size_t n_qubits) { return SpaceLayout(qubit_entries(n_qubits)); }

SpaceLayout SpaceLayout::modes(std::span<const Index> mode_dims) { return qubits_and_modes(0, mode_dims); }

std::size_t SpaceLayout::n_qubits() const {
    return static_cast<std::size_t>(std::count_if(subsystems_.begin(), subsystems_.end(), [](const Subsystem& s) {
        return s.role == SubsystemRole::qubit;
    }));
}

Index SpaceLayout::qubit_dim() const { return Index{1} << n_qubits(); }

Index SpaceLayout::bath_dim() const { return total_dim_ / qubit_dim(); }

SpaceLayout SpaceLayout::restricted(std::span<const std::size_t> keep) const {
    std::vector<Subsystem> kept;
    for (std::size_t i : keep) {
        if (i >= size()) {
            throw BadSubsystemIndex("subsystem index " + std::to_string(i) + " out of range");
        }
        kept.push_back(subsystems_[i]);
    }
    return SpaceLayout(std::move(kept));
}

SpaceLayout SpaceLayout::tensor(const SpaceLayout& other) const {
    auto all = subsystems_;
    all.insert(all.end(), other.subsystems_.begin(), other.subsystems_.end());
    return SpaceLayout(std::move(all));
}

Operator::Operator(Matrix data, SpaceLayout layout) : data_(std::move(data)), layout_(std::move(layout)) {
    if (data_.rows() != data_.cols()) {
        throw DimensionMismatch("Operator matrix must be square");
    }
    if (data_.rows() != layout_.total_dim()) {
        throw DimensionMismatch("Operator dimension " + std::to_string(data_.rows()) +
                                " does not match layout dimension " + std::to_string(layout_.total_dim()));
    }
    if (!all_finite(data_)) {
        throw InvalidArgument("Operator has non-finite entries");
    }
}

Operator Operator::identity(const SpaceLayout& layout) {
    return Operator(Matrix::Identity(layout.total_dim(), layout.total_dim()), layout);
}

Operator Operator::zero(const SpaceLayout& layout) {
    return Operator(Matrix::Zero(layout.total_dim(), layout.total_dim()), layout);
}

Operator Operator::adjoint() const { return Operator(data_.adjoint(), layout_); }

Operator Operator::operator+(const Operator& other) const {
    require_same_layout(layout_, other.layout_, "operator+");
    return Operator(data_ + other.data_, layout_);
}

Operator Operator::operator-(const Operator& other) const {
    require_same_layout(layout_, other.layout_, "operator-");
    return Operator(data_ - other.data_, layout_);
}

Operator Operator::operator*(const Operator& other) const {
    require_same_layout(layout_, other.layout_, "operator*");
    return Operator(detail::gemm(data_, other.data_), layout_);
}

Operator Operator::operator*(Complex scalar) const { return Operator(data_ * scalar, layout_); }

Matrix kron(const Matrix& a, const Matrix& b) {
    const Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    Matrix out(ar * br, ac * bc);
    for (Index j = 0; j < ac; ++j) {
        for (Index i = 0; i < ar; ++i) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

Matrix kron(std::span<const Matrix> factors) {
    if (factors.empty()) {
        return Matrix::Identity(1, 1);
    }
    Matrix acc = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        acc = kron(acc, factors[k]);
    }
    return acc;
}

Matrix kron(std::initializer_list<Matrix> factors) {
    return kron(std::span<const Matrix>(factors.begin(), factors.size()));
}

HermitianSpectrum HermitianSpectrum::of(const Matrix& h) {
    if (h.rows() != h.cols()) {
        throw DimensionMismatch("HermitianSpectrum::of needs a square matrix");
    }
    if (!is_hermitian(h)) {
        throw NonHermitianInput("matrix is not Hermitian: ‖h − h†‖_max = " + std::to_string(hermiticity_defect(h)));
    }
    Matrix vectors = h;
    RealVector values;
    detail::heevr(vectors, values);
    return HermitianSpectrum(std::move(values), std::move(vectors));
}

HermitianSpectrum::HermitianSpectrum(RealVector values, Matrix vectors)
    : values_(std::move(values)), vectors_(std::move(vectors)) {
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() != values_.size()) {
        throw DimensionMismatch("HermitianSpectrum: eigenvector matrix does not match eigenvalue count");
    }
}

Matrix HermitianSpectrum::exp(Complex s) const {
    const Vector factors = (s * values_.cast<Complex>()).array().exp().matrix();
    return detail::gemm(vectors_ * factors.asDiagonal(), Trans::none, vectors_, Trans::adjoint);
}

Matrix HermitianSpectrum::evolve(double t, const Matrix& x) const {
    if (x.rows() != dim()) {
        throw DimensionMismatch("HermitianSpectrum::evolve: operand has wrong row count");
    }
    const Vector phases = (Complex(0.0, -t) * values_.cast<Complex>()).array().exp().matrix();
    Matrix coeffs = detail::gemm(vectors_, Trans::adjoint, x, Trans::none);
    coeffs = phases.asDiagonal() * coeffs;
    return detail::gemm(vectors_, coeffs);
}

Matrix HermitianSpectrum::matrix() const {
    return detail::gemm(vectors_ * values_.cast<Complex>().asDiagonal(), Trans::none, vectors_, Trans::adjoint);
}

Matrix expm_hermitian(const Matrix& h, Complex s) {
    if (s == Complex(0.0, 0.0)) {
        if (h.rows() != h.cols()) {
            throw DimensionMismatch("expm_hermitian needs a square matrix");
        }
        return Matrix::Identity(h.rows(), h.cols());
    }
    return HermitianSpectrum::of(h).exp(s);
}

Operator partial_trace(const Operator& op, std::span<const std::size_t> keep) {
    const SpaceLayout& layout = op.layout();
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) {
        throw BadSubsystemIndex("partial_trace: keep set is empty");
    }
    if (kept.back() >= layout.size()) {
        throw BadSubsystemIndex("partial_trace: subsystem index " + std::to_string(kept.back()) + " out of range");
    }

    // Row-major strides of each factor within the full index.
    std::vector<Index> stride(layout.size());
    Index s = 1;
    for (std::size_t i = layout.size(); i-- > 0;) {
        stride[i] = s;
        s *= layout[i].dim;
    }

    std::vector<bool> is_kept(layout.size(), false);
    for (std::size_t i : kept) {
        is_kept[i] = true;
    }

    // Full-index offsets contributed by every multi-index over a set of factors.
    auto offsets_for = [&](bool kept_set) {
        std::vector<Index> offs{0};
        for (std::size_t i = 0; i < layout.size(); ++i) {
            if (is_kept[i] != kept_set) {
                continue;
            }
            std::vector<Index> next;
            next.reserve(offs.size() * static_cast<std::size_t>(layout[i].dim));
            for (Index base : offs) {
                for (Index d = 0; d < layout[i].dim; ++d) {
                    next.push_back(base + d * stride[i]);
                }
            }
            offs = std::move(next);
        }
        return offs;
    };
    const std::vector<Index> kept_off = offsets_for(true);
    const std::vector<Index> traced_off = offsets_for(false);

    const Matrix& m = op.matrix();
    const auto n = static_cast<Index>(kept_off.size());
    Matrix out = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            Complex acc = 0.0;
            for (Index t : traced_off) {
                acc += m(kept_off[static_cast<std::size_t>(i)] + t, kept_off[static_cast<std::size_t>(j)] + t);
            }
            out(i, j) = acc;
        }
    }
    return Operator(std::move(out), layout.restricted(kept));
}

Operator partial_trace(const Operator& op, std::initializer_list<std::size_t> keep) {
    return partial_trace(op, std::span<const std::size_t>(keep.begin(), keep.size()));
}

double commutator_norm(const Operator& a, const Operator& b) {
    require_same_layout(a.layout(), b.layout(), "commutator_norm");
    const Matrix& x = a.matrix();
    const Matrix& y = b.matrix();
    return (detail::gemm(x, y) - detail::gemm(y, x)).norm();
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

double unitarity_defect(const Matrix& m) {
    return max_abs(detail::gemm(m, Trans::none, m, Trans::adjoint) - Matrix::Identity(m.rows(), m.rows()));
}

bool is_hermitian(const Matrix& m, double rel_tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return hermiticity_defect(m) <= rel_tol * std::max(1.0, max_abs(m));
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace dressed
