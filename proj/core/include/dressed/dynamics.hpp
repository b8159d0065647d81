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

// States, exact unitary propagation, reduced states and the fidelity metric.

#include <cstdint>
#include <span>

#include "dressed/linops.hpp"
#include "dressed/model.hpp"

namespace dressed {

/// Hermitian, unit-trace, PSD density matrix.
class DensityState {
   public:
    /// Checks Hermiticity (relative 1e−10) and unit trace (1e−10). PSD is
    /// checked on demand by min_eigenvalue().
    DensityState(Matrix data, SpaceLayout layout);

    static DensityState pure(const Vector& psi, SpaceLayout layout);

    const Matrix& matrix() const { return data_; }
    const SpaceLayout& layout() const { return layout_; }
    Index dim() const { return data_.rows(); }

    double trace_error() const;
    double purity() const;
    double min_eigenvalue() const;

   private:
    Matrix data_;
    SpaceLayout layout_;
};

/// ρ = Σ_j w_j |v_j⟩⟨v_j| with w_j ≥ 0. Propagation acts on the columns only,
/// which is what makes large thermal baths affordable.
class StateEnsemble {
   public:
    StateEnsemble(RealVector weights, Matrix vectors, SpaceLayout layout);

    const RealVector& weights() const { return weights_; }
    const Matrix& vectors() const { return vectors_; }
    const SpaceLayout& layout() const { return layout_; }
    Index rank() const { return weights_.size(); }

    DensityState to_density() const;

   private:
    RealVector weights_;
    Matrix vectors_;
    SpaceLayout layout_;
};

/// Normalized N-qubit state vector.
class PureQubitState {
   public:
    /// Throws InvalidArgument unless the length is a power of two and the norm is 1 to 1e−12.
    explicit PureQubitState(Vector amplitudes);

    const Vector& amplitudes() const { return amplitudes_; }
    std::size_t n_qubits() const { return n_qubits_; }
    SpaceLayout layout() const { return SpaceLayout::qubits(n_qubits_); }
    Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

   private:
    Vector amplitudes_;
    std::size_t n_qubits_;
};

enum class Readout { bare, dressed };

/// Gibbs state e^{−βH}/Z of a bath Hamiltonian.
DensityState thermal_state(const Operator& h_bath, double beta);

/// Haar-random state: a complex Gaussian vector (std::mt19937_64 seeded with
/// `seed`, Box–Muller on 53-bit uniforms) normalized to one.
PureQubitState haar_random_qubit_state(std::uint64_t seed, std::size_t n_qubits);

/// V (|ψ⟩⟨ψ| ⊗ ρ_B) V†.
DensityState dressed_initial_state(const PureQubitState& psi, const DensityState& rho_bath, const Operator& v);
/// The same state as an ensemble {p_j, V(|ψ⟩ ⊗ |j⟩)} over the eigenbasis of ρ_B.
StateEnsemble dressed_initial_ensemble(const PureQubitState& psi, const DensityState& rho_bath, const Operator& v);

/// e^{−iHt} · e^{iHt} with one cached eigendecomposition of H reused for every t.
class Propagator {
   public:
    /// Throws NonHermitianInput.
    explicit Propagator(const Operator& h);
    Propagator(HermitianSpectrum spectrum, SpaceLayout layout);

    const HermitianSpectrum& spectrum() const { return spectrum_; }
    const SpaceLayout& layout() const { return layout_; }

    Matrix unitary(double t) const;
    DensityState propagate(const DensityState& rho, double t) const;
    StateEnsemble propagate(const StateEnsemble& rho, double t) const;

   private:
    HermitianSpectrum spectrum_;
    SpaceLayout layout_;
};

DensityState propagate(const Operator& h, const DensityState& rho0, double t);

/// Qubit marginal. Readout::dressed undoes V first.
DensityState reduced_system_state(const DensityState& rho, Readout readout, const Operator& v);
DensityState reduced_system_state(const StateEnsemble& rho, Readout readout, const Operator& v);

/// F = √|⟨ψ|ρ|ψ⟩|.
double fidelity(const PureQubitState& psi_ideal, const DensityState& rho_s);

/// Applies e^{−iH_S τ} for each segment in order, with H_S built from `params`.
PureQubitState ideal_evolution(const PureQubitState& psi0, std::span<const ControlSegment> segments,
                               const ModelParams& params);

}  // namespace dressed
