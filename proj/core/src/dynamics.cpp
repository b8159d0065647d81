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

#include "dressed/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dressed/errors.hpp"
#include "blas.hpp"

namespace dressed {

namespace {

using detail::Trans;

constexpr double kTraceTolerance = 1e-10;
// Ensemble members below this fraction of the largest weight are dropped.
constexpr double kNegligibleWeight = 1e-24;

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

std::vector<std::size_t> qubit_indices(const SpaceLayout& layout) {
    std::vector<std::size_t> keep(layout.n_qubits());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        keep[i] = i;
    }
    return keep;
}

void require_composite(const SpaceLayout& qubits, const SpaceLayout& bath, const Operator& v) {
    if (!(qubits.tensor(bath) == v.layout())) {
        throw DimensionMismatch("system and bath layouts do not compose to the dressing's layout");
    }
}

// Eigen-ensemble of a bath state; diagonal states skip the decomposition.
std::pair<RealVector, Matrix> bath_ensemble(const DensityState& rho_bath) {
    const Matrix& m = rho_bath.matrix();
    const Matrix off = m - Matrix(m.diagonal().asDiagonal());
    if (max_abs(off) == 0.0) {
        return {m.diagonal().real(), Matrix::Identity(m.rows(), m.cols())};
    }
    HermitianSpectrum s = HermitianSpectrum::of(m);
    return {s.values(), s.vectors()};
}

}  // namespace

DensityState::DensityState(Matrix data, SpaceLayout layout) : data_(std::move(data)), layout_(std::move(layout)) {
    if (data_.rows() != data_.cols() || data_.rows() != layout_.total_dim()) {
        throw DimensionMismatch("density matrix does not match its layout");
    }
    if (!all_finite(data_)) {
        throw InvalidArgument("density matrix has non-finite entries");
    }
    if (!is_hermitian(data_)) {
        throw InvalidArgument("density matrix is not Hermitian");
    }
    if (trace_error() > kTraceTolerance) {
        throw InvalidArgument("density matrix trace differs from 1 by " + std::to_string(trace_error()));
    }
}

DensityState DensityState::pure(const Vector& psi, SpaceLayout layout) {
    return DensityState(psi * psi.adjoint(), std::move(layout));
}

double DensityState::trace_error() const { return std::abs(data_.trace() - Complex(1.0, 0.0)); }

double DensityState::purity() const { return (data_ * data_).trace().real(); }

double DensityState::min_eigenvalue() const { return HermitianSpectrum::of(hermitian_part(data_)).values().minCoeff(); }

StateEnsemble::StateEnsemble(RealVector weights, Matrix vectors, SpaceLayout layout)
    : weights_(std::move(weights)), vectors_(std::move(vectors)), layout_(std::move(layout)) {
    if (vectors_.cols() != weights_.size() || vectors_.rows() != layout_.total_dim()) {
        throw DimensionMismatch("ensemble vectors do not match weights or layout");
    }
    if (weights_.size() > 0 && weights_.minCoeff() < 0.0) {
        throw InvalidArgument("ensemble weights must be >= 0");
    }
}

DensityState StateEnsemble::to_density() const {
    const Matrix scaled = vectors_ * weights_.cwiseSqrt().cast<Complex>().asDiagonal();
    return DensityState(hermitian_part(detail::gemm(scaled, Trans::none, scaled, Trans::adjoint)), layout_);
}

PureQubitState::PureQubitState(Vector amplitudes) : amplitudes_(std::move(amplitudes)), n_qubits_(0) {
    const Index n = amplitudes_.size();
    if (n < 2 || (n & (n - 1)) != 0) {
        throw InvalidArgument("qubit state length must be a power of two >= 2");
    }
    while ((Index{1} << n_qubits_) < n) {
        ++n_qubits_;
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
        throw InvalidArgument("qubit state is not normalized");
    }
}

DensityState thermal_state(const Operator& h_bath, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidArgument("thermal_state needs beta > 0");
    }
    const Matrix& h = h_bath.matrix();
    const Matrix off = h - Matrix(h.diagonal().asDiagonal());
    RealVector energies;
    Matrix basis;
    if (max_abs(off) == 0.0) {
        energies = h.diagonal().real();
    } else {
        HermitianSpectrum s = HermitianSpectrum::of(h);
        energies = s.values();
        basis = s.vectors();
    }
    const double e_min = energies.minCoeff();
    RealVector p = (-beta * (energies.array() - e_min)).exp().matrix();
    p /= p.sum();
    Matrix rho = p.cast<Complex>().asDiagonal();
    if (basis.size() != 0) {
        rho = hermitian_part(detail::gemm(detail::gemm(basis, rho), Trans::none, basis, Trans::adjoint));
    }
    return DensityState(std::move(rho), h_bath.layout());
}

PureQubitState haar_random_qubit_state(std::uint64_t seed, std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > 20) {
        throw InvalidArgument("haar_random_qubit_state needs 1..20 qubits");
    }
    std::mt19937_64 rng(seed);
    constexpr double kInv53 = 1.0 / 9007199254740992.0;
    const Index n = Index{1} << n_qubits;
    Vector v(n);
    for (Index k = 0; k < n; ++k) {
        const double u1 = static_cast<double>((rng() >> 11) + 1) * kInv53;  // (0, 1]
        const double u2 = static_cast<double>(rng() >> 11) * kInv53;        // [0, 1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        v(k) = Complex(r * std::cos(phi), r * std::sin(phi));
    }
    v /= v.norm();
    return PureQubitState(std::move(v));
}

DensityState dressed_initial_state(const PureQubitState& psi, const DensityState& rho_bath, const Operator& v) {
    require_composite(psi.layout(), rho_bath.layout(), v);
    const Matrix product = kron(psi.projector(), rho_bath.matrix());
    const Matrix& u = v.matrix();
    return DensityState(hermitian_part(detail::gemm(detail::gemm(u, product), Trans::none, u, Trans::adjoint)), v.layout());
}

StateEnsemble dressed_initial_ensemble(const PureQubitState& psi, const DensityState& rho_bath, const Operator& v) {
    require_composite(psi.layout(), rho_bath.layout(), v);
    auto [weights, basis] = bath_ensemble(rho_bath);
    const double w_max = weights.maxCoeff();
    std::vector<Index> kept;
    for (Index j = 0; j < weights.size(); ++j) {
        if (weights(j) > kNegligibleWeight * w_max) {
            kept.push_back(j);
        }
    }
    const Index ds = psi.layout().total_dim();
    const Index db = rho_bath.dim();
    const Matrix& u = v.matrix();
    // (ψ ⊗ I_B) V-side contraction: V(ψ ⊗ e) = Σ_a ψ_a V[:, a·d_B : (a+1)·d_B] e.
    Matrix left = Matrix::Zero(u.rows(), db);
    for (Index a = 0; a < ds; ++a) {
        left += psi.amplitudes()(a) * u.middleCols(a * db, db);
    }
    RealVector w(static_cast<Index>(kept.size()));
    Matrix cols(u.rows(), static_cast<Index>(kept.size()));
    const bool diagonal_basis = basis.isIdentity(0.0);
    for (std::size_t c = 0; c < kept.size(); ++c) {
        const auto ci = static_cast<Index>(c);
        w(ci) = weights(kept[c]);
        if (diagonal_basis) {
            cols.col(ci) = left.col(kept[c]);
        } else {
            cols.col(ci) = left * basis.col(kept[c]);
        }
    }
    return StateEnsemble(std::move(w), std::move(cols), v.layout());
}

Propagator::Propagator(const Operator& h) : spectrum_(HermitianSpectrum::of(h.matrix())), layout_(h.layout()) {}

Propagator::Propagator(HermitianSpectrum spectrum, SpaceLayout layout)
    : spectrum_(std::move(spectrum)), layout_(std::move(layout)) {
    if (spectrum_.dim() != layout_.total_dim()) {
        throw DimensionMismatch("propagator spectrum does not match its layout");
    }
}

Matrix Propagator::unitary(double t) const { return spectrum_.exp(Complex(0.0, -t)); }

DensityState Propagator::propagate(const DensityState& rho, double t) const {
    if (!(t >= 0.0)) {
        throw InvalidArgument("propagation time must be >= 0");
    }
    if (!(rho.layout() == layout_)) {
        throw DimensionMismatch("state and Hamiltonian act on different layouts");
    }
    if (t == 0.0) {
        return rho;
    }
    const Matrix u = unitary(t);
    return DensityState(hermitian_part(detail::gemm(detail::gemm(u, rho.matrix()), Trans::none, u, Trans::adjoint)), layout_);
}

StateEnsemble Propagator::propagate(const StateEnsemble& rho, double t) const {
    if (!(t >= 0.0)) {
        throw InvalidArgument("propagation time must be >= 0");
    }
    if (!(rho.layout() == layout_)) {
        throw DimensionMismatch("state and Hamiltonian act on different layouts");
    }
    if (t == 0.0) {
        return rho;
    }
    return StateEnsemble(rho.weights(), spectrum_.evolve(t, rho.vectors()), layout_);
}

DensityState propagate(const Operator& h, const DensityState& rho0, double t) {
    return Propagator(h).propagate(rho0, t);
}

DensityState reduced_system_state(const DensityState& rho, Readout readout, const Operator& v) {
    const auto keep = qubit_indices(rho.layout());
    if (readout == Readout::bare) {
        const Operator r = partial_trace(Operator(rho.matrix(), rho.layout()), keep);
        return DensityState(hermitian_part(r.matrix()), r.layout());
    }
    if (!(v.layout() == rho.layout())) {
        throw DimensionMismatch("dressing and state act on different layouts");
    }
    const Matrix undressed = detail::gemm(v.matrix(), Trans::adjoint, detail::gemm(rho.matrix(), v.matrix()), Trans::none);
    const Operator r = partial_trace(Operator(undressed, rho.layout()), keep);
    return DensityState(hermitian_part(r.matrix()), r.layout());
}

DensityState reduced_system_state(const StateEnsemble& rho, Readout readout, const Operator& v) {
    const SpaceLayout& layout = rho.layout();
    Matrix undressed;
    if (readout == Readout::dressed) {
        if (!(v.layout() == layout)) {
            throw DimensionMismatch("dressing and state act on different layouts");
        }
        undressed = detail::gemm(v.matrix(), Trans::adjoint, rho.vectors(), Trans::none);
    }
    const Matrix& vecs = readout == Readout::dressed ? undressed : rho.vectors();
    const Index ds = layout.qubit_dim();
    const Index db = layout.bath_dim();
    Matrix out = Matrix::Zero(ds, ds);
    for (Index j = 0; j < rho.rank(); ++j) {
        // Column j reshaped so that entry (b, a) is amplitude of |a⟩_S|b⟩_B.
        const Eigen::Map<const Matrix> m(vecs.col(j).data(), db, ds);
        out.noalias() += rho.weights()(j) * (m.transpose() * m.conjugate());
    }
    return DensityState(hermitian_part(out), layout.restricted(qubit_indices(layout)));
}

double fidelity(const PureQubitState& psi_ideal, const DensityState& rho_s) {
    if (psi_ideal.amplitudes().size() != rho_s.dim()) {
        throw DimensionMismatch("fidelity: state and density matrix dimensions differ");
    }
    const Vector& psi = psi_ideal.amplitudes();
    const Complex overlap = psi.dot(rho_s.matrix() * psi);
    return std::sqrt(std::abs(overlap));
}

PureQubitState ideal_evolution(const PureQubitState& psi0, std::span<const ControlSegment> segments,
                               const ModelParams& params) {
    if (psi0.n_qubits() != params.n_qubits()) {
        throw DimensionMismatch("ideal_evolution: state and model have different qubit counts");
    }
    Vector psi = psi0.amplitudes();
    for (const auto& seg : segments) {
        const Matrix hs = system_hamiltonian_matrix(params, &seg);
        psi = expm_hermitian(hs, Complex(0.0, -seg.duration)) * psi;
    }
    return PureQubitState(std::move(psi));
}

}  // namespace dressed
