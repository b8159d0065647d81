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

// Hamiltonians and the dressing transformation.
//
//   H_S  = Σ_i (ω_i/2) Z_i + Σ_i η_i Y_i + Σ_{i<j} J_ij Y_i Y_j
//   H_B  = Σ_k ω_k b_k† b_k
//   V    = exp[ 2^{−N} Σ_j Y_j ⊗ Σ_k (α_k b_k† − α_k* b_k) ]
//   H_SB = Σ_i [ (iω_i/2) X_i ⊗ Σ_k (α_k b_k† − α_k* b_k)
//                − ½ Y_i ⊗ Σ_k ω_k (α_k b_k† + α_k* b_k) ]
//
// The exact dressed-frame Hamiltonian is V (H_S + H_B) V†. H_0 + H_SB is its
// first-order expansion; for purely imaginary α_k it is term-by-term the
// anisotropic X/Y spin-boson coupling.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "dressed/hilbert.hpp"
#include "dressed/linops.hpp"

namespace dressed {

struct ModelParams {
    /// ω_i, one per qubit. Zero is allowed (no drift).
    std::vector<double> qubit_freqs{2.0};
    /// ω_k, one per bath mode; strictly positive.
    std::vector<double> mode_freqs{2.0};
    /// α_k, one per bath mode.
    std::vector<Complex> couplings{0.0};
    /// Inverse bath temperature (k_B = 1).
    double beta = 1.0;
    TruncationPolicy truncation;

    std::size_t n_qubits() const { return qubit_freqs.size(); }
    std::size_t n_modes() const { return mode_freqs.size(); }

    /// Throws InvalidArgument on any violated invariant.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

/// One piecewise-constant slice of the control Hamiltonian.
struct ControlSegment {
    double duration = 0.0;
    /// η_i per qubit; an empty list means all zero.
    std::vector<double> eta;
    /// J_ij keyed by (i, j) with i < j.
    std::map<std::pair<std::size_t, std::size_t>, double> yy;

    /// A segment with no controls (pure drift).
    static ControlSegment free(double duration) { return ControlSegment{duration, {}, {}}; }

    /// Throws BadSegment if the segment does not fit an n_qubits register.
    void validate(std::size_t n_qubits) const;

    bool operator==(const ControlSegment&) const = default;
};

enum class Frame { exact_dressed, literal_first_order };

/// ModelParams with every mode's Fock cutoff resolved.
class Model {
   public:
    explicit Model(ModelParams params);
    /// Explicit per-mode cutoffs (each >= 1); the truncation policy is ignored.
    Model(ModelParams params, std::vector<Index> n_max);

    const ModelParams& params() const { return params_; }
    const SpaceLayout& layout() const { return layout_; }
    SpaceLayout system_layout() const;
    SpaceLayout bath_layout() const;

    const std::vector<Index>& n_max() const { return n_max_; }
    /// Thermal weight lost to truncation, 1 − Π_k (1 − tail_k).
    double tail_weight() const;
    /// 2^{−N}.
    double dressing_prefactor() const;

    std::size_t n_qubits() const { return params_.n_qubits(); }
    std::size_t n_modes() const { return params_.n_modes(); }
    std::size_t mode_subsystem(std::size_t k) const { return n_qubits() + k; }

   private:
    ModelParams params_;
    std::vector<Index> n_max_;
    SpaceLayout layout_;
};

/// H_S on the qubit register alone (2^N × 2^N).
Matrix system_hamiltonian_matrix(const ModelParams& params, const ControlSegment* segment = nullptr);

/// H_S ⊗ I_B.
Operator build_system_hamiltonian(const Model& model, const ControlSegment* segment = nullptr);

/// I_S ⊗ H_B.
Operator build_bath_hamiltonian(const Model& model);
/// H_B on the bath layout alone.
Operator build_bath_hamiltonian_local(const Model& model);
/// Diagonal of the local H_B in kron order.
RealVector bath_energies(const Model& model);

/// The anti-Hermitian exponent of V, assembled term by term.
Operator dressing_generator(const Model& model);

/// V, from its exact spectral structure: V = Σ_m P_m ⊗ ⊗_k D_k(2^{−N} m α_k)
/// where P_m projects onto eigenvalue m of Σ_j Y_j.
Operator build_dressing(const Model& model);

/// The first-order interaction H_SB.
Operator build_interaction(const Model& model);

/// exact_dressed: V H_0 V†. literal_first_order: H_0 + H_SB.
Operator build_full_hamiltonian(const Model& model, Frame frame, const ControlSegment* segment = nullptr);
/// Same, with a dressing that the caller already built.
Operator build_full_hamiltonian(const Model& model, Frame frame, const Operator& dressing,
                                const ControlSegment* segment = nullptr);

/// ‖V H_0 V† − H_0 − H_SB‖_F with no controls.
double decoupling_residual(const Model& model);

/// Eigensystem of V H_0 V† read off from construction: eigenvectors
/// V (U_S ⊗ I_B), eigenvalues those of H_S plus bath energies.
HermitianSpectrum dressed_frame_spectrum(const Model& model, const Operator& dressing,
                                         const ControlSegment* segment = nullptr);

}  // namespace dressed
