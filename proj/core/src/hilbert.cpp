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

#include "dressed/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dressed/errors.hpp"
#include "blas.hpp"
#include "lapack.hpp"

namespace dressed {

namespace {

std::string index_str(std::size_t i) { return std::to_string(i); }

void require_index(std::size_t i, const SpaceLayout& layout) {
    if (i >= layout.size()) {
        throw BadSubsystemIndex("subsystem index " + index_str(i) + " out of range for layout of size " +
                                index_str(layout.size()));
    }
}

void require_qubit(std::size_t i, const SpaceLayout& layout) {
    require_index(i, layout);
    if (layout[i].role != SubsystemRole::qubit) {
        throw NotAQubit("subsystem " + index_str(i) + " is not a qubit");
    }
}

void require_mode(std::size_t i, const SpaceLayout& layout) {
    require_index(i, layout);
    if (layout[i].role != SubsystemRole::mode) {
        throw NotAMode("subsystem " + index_str(i) + " is not a bosonic mode");
    }
}

}  // namespace

Matrix pauli_matrix(PauliAxis axis) {
    const Complex i(0.0, 1.0);
    Matrix m(2, 2);
    switch (axis) {
        case PauliAxis::x:
            m << 0.0, 1.0, 1.0, 0.0;
            break;
        case PauliAxis::y:
            m << 0.0, -i, i, 0.0;
            break;
        case PauliAxis::z:
            m << 1.0, 0.0, 0.0, -1.0;
            break;
    }
    return m;
}

Operator embed(const Matrix& local, std::size_t index, const SpaceLayout& layout) {
    const LocalFactor factor{index, local};
    return embed(std::span<const LocalFactor>(&factor, 1), layout);
}

Operator embed(std::span<const LocalFactor> factors, const SpaceLayout& layout) {
    std::vector<const Matrix*> slot(layout.size(), nullptr);
    for (const auto& f : factors) {
        require_index(f.index, layout);
        if (slot[f.index] != nullptr) {
            throw BadSubsystemIndex("embed: subsystem " + index_str(f.index) + " given twice");
        }
        if (f.local.rows() != layout[f.index].dim || f.local.cols() != layout[f.index].dim) {
            throw DimensionMismatch("embed: local operator does not match subsystem " + index_str(f.index));
        }
        slot[f.index] = &f.local;
    }
    // Runs of untouched subsystems collapse into a single identity factor.
    std::vector<Matrix> chain;
    Index run = 1;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (slot[i] == nullptr) {
            run *= layout[i].dim;
            continue;
        }
        if (run > 1) {
            chain.push_back(Matrix::Identity(run, run));
            run = 1;
        }
        chain.push_back(*slot[i]);
    }
    if (run > 1 || chain.empty()) {
        chain.push_back(Matrix::Identity(run, run));
    }
    return Operator(kron(std::span<const Matrix>(chain)), layout);
}

Operator pauli(PauliAxis axis, std::size_t qubit, const SpaceLayout& layout) {
    require_qubit(qubit, layout);
    return embed(pauli_matrix(axis), qubit, layout);
}

Matrix ladder_matrix(Index n_max) {
    Matrix b = Matrix::Zero(n_max + 1, n_max + 1);
    for (Index n = 1; n <= n_max; ++n) {
        b(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return b;
}

Operator annihilation(std::size_t mode, const SpaceLayout& layout) {
    require_mode(mode, layout);
    return embed(ladder_matrix(layout[mode].dim - 1), mode, layout);
}

Operator number_operator(std::size_t mode, const SpaceLayout& layout) {
    require_mode(mode, layout);
    const Index dim = layout[mode].dim;
    Matrix n = Matrix::Zero(dim, dim);
    for (Index k = 0; k < dim; ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return embed(n, mode, layout);
}

Operator displacement_generator(Complex alpha, std::size_t qubit, std::size_t mode, const SpaceLayout& layout) {
    require_qubit(qubit, layout);
    require_mode(mode, layout);
    const Matrix b = ladder_matrix(layout[mode].dim - 1);
    const LocalFactor factors[] = {
        {qubit, 0.5 * pauli_matrix(PauliAxis::y)},
        {mode, alpha * b.adjoint() - std::conj(alpha) * b},
    };
    Matrix g = embed(factors, layout).matrix();
    // Remove rounding asymmetry so that G† = −G holds exactly.
    Matrix anti = 0.5 * (g - g.adjoint());
    return Operator(std::move(anti), layout);
}

QuadratureSpectrum::QuadratureSpectrum(Index n_max) {
    if (n_max < 1) {
        throw InvalidArgument("QuadratureSpectrum needs n_max >= 1");
    }
    nodes_ = RealVector::Zero(n_max + 1);
    RealVector off(n_max);
    for (Index n = 0; n < n_max; ++n) {
        off(n) = std::sqrt(static_cast<double>(n + 1));
    }
    detail::stevr(nodes_, off, vectors_);
}

Matrix QuadratureSpectrum::displacement(Complex beta) const {
    const Index dim = nodes_.size();
    const double r = std::abs(beta);
    if (r == 0.0) {
        return Matrix::Identity(dim, dim);
    }
    // β b† − β* b = |β| W (b† − b) W† with W = diag(e^{in(arg β + π/2)}), and
    // b† − b = T(−iX)T† for T = diag(iⁿ); hence exp = W exp(−i|β|X) W†.
    const Matrix q = vectors_.cast<Complex>();
    const Vector phases = (Complex(0.0, -r) * nodes_.cast<Complex>()).array().exp().matrix();
    Matrix out = detail::gemm(q * phases.asDiagonal(), detail::Trans::none, q, detail::Trans::adjoint);

    const double phase_step = std::arg(beta) + 0.5 * std::numbers::pi;
    Vector w(dim);
    for (Index n = 0; n < dim; ++n) {
        w(n) = std::polar(1.0, phase_step * static_cast<double>(n));
    }
    for (Index k = 0; k < dim; ++k) {
        out.col(k) = w.cwiseProduct(out.col(k)) * std::conj(w(k));
    }
    return out;
}

TruncationPolicy::TruncationPolicy(FixedTruncation f) : rule_(f) {
    if (f.n_max < 2) {
        throw InvalidArgument("fixed truncation needs n_max >= 2, got " + std::to_string(f.n_max));
    }
}

TruncationPolicy::TruncationPolicy(AdaptiveTruncation a) : rule_(a) {
    if (!(a.tail_epsilon > 0.0 && a.tail_epsilon <= 1e-4)) {
        throw InvalidArgument("adaptive truncation needs tail_epsilon in (0, 1e-4]");
    }
    if (a.headroom < 4) {
        throw InvalidArgument("adaptive truncation needs headroom >= 4");
    }
    if (a.hard_cap < 2) {
        throw InvalidArgument("adaptive truncation needs hard_cap >= 2");
    }
}

double thermal_occupation(double beta, double omega) { return 1.0 / std::expm1(beta * omega); }

double thermal_tail_weight(double beta, double omega, Index n_max) {
    return std::exp(-beta * omega * static_cast<double>(n_max + 1));
}

Index choose_truncation(const TruncationPolicy& policy, double beta, double omega, double alpha_abs) {
    if (const auto* fixed = std::get_if<FixedTruncation>(&policy.rule())) {
        return fixed->n_max;
    }
    const auto& rule = std::get<AdaptiveTruncation>(policy.rule());
    if (!(beta > 0.0) || !(omega > 0.0) || !std::isfinite(beta * omega)) {
        throw InvalidArgument("choose_truncation needs beta > 0 and omega > 0");
    }
    if (!(alpha_abs >= 0.0) || !std::isfinite(alpha_abs)) {
        throw InvalidArgument("choose_truncation needs a finite |alpha| >= 0");
    }
    const auto cap = static_cast<double>(rule.hard_cap);
    auto unsatisfiable = [&](double wanted) {
        return PolicyUnsatisfiable("adaptive truncation needs n_max ≈ " + std::to_string(wanted) +
                                   " at beta=" + std::to_string(beta) + ", omega=" + std::to_string(omega) +
                                   ", exceeding the hard cap " + std::to_string(rule.hard_cap));
    };

    // (i) tail: e^{−βω(n+1)} < ε  ⇔  n + 1 > ln(1/ε)/(βω).
    const double levels = std::log(1.0 / rule.tail_epsilon) / (beta * omega);
    if (levels > cap + 1.0) {
        throw unsatisfiable(levels);
    }
    auto n_tail = static_cast<Index>(std::floor(levels));
    while (n_tail > 0 && thermal_tail_weight(beta, omega, n_tail - 1) < rule.tail_epsilon) {
        --n_tail;
    }
    while (thermal_tail_weight(beta, omega, n_tail) >= rule.tail_epsilon) {
        ++n_tail;
    }

    // (ii) occupation headroom plus room for the displacement.
    const double nbar = thermal_occupation(beta, omega);
    const double occ = nbar + static_cast<double>(rule.headroom) * std::sqrt(nbar + 1.0) +
                       std::ceil(4.0 * alpha_abs * alpha_abs);
    if (occ > cap) {
        throw unsatisfiable(occ);
    }
    const auto n_occ = static_cast<Index>(std::ceil(occ));

    const Index n = std::max<Index>({2, n_tail, n_occ});
    if (n > rule.hard_cap) {
        throw unsatisfiable(static_cast<double>(n));
    }
    return n;
}

}  // namespace dressed
