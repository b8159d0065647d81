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

// Qubit and truncated bosonic-mode operators embedded in a composite layout,
// plus the Fock-cutoff policy.

#include <cstddef>
#include <span>
#include <variant>

#include "dressed/linops.hpp"

namespace dressed {

enum class PauliAxis { x, y, z };

/// The bare 2×2 Pauli matrix.
Matrix pauli_matrix(PauliAxis axis);

/// Places `local` on subsystem `index`, identities elsewhere.
Operator embed(const Matrix& local, std::size_t index, const SpaceLayout& layout);

/// A local factor placed on one subsystem.
struct LocalFactor {
    std::size_t index;
    Matrix local;
};

/// Tensor product of local factors on distinct subsystems, identities elsewhere.
Operator embed(std::span<const LocalFactor> factors, const SpaceLayout& layout);

/// Pauli on layout entry `qubit`. Throws BadSubsystemIndex or NotAQubit.
Operator pauli(PauliAxis axis, std::size_t qubit, const SpaceLayout& layout);

/// Truncated annihilation matrix on levels 0..n_max: √n on the superdiagonal.
Matrix ladder_matrix(Index n_max);

/// Annihilation operator of layout entry `mode`. Throws BadSubsystemIndex or NotAMode.
Operator annihilation(std::size_t mode, const SpaceLayout& layout);
Operator number_operator(std::size_t mode, const SpaceLayout& layout);

/// Anti-Hermitian G = ½ Y_qubit ⊗ (α b† − α* b)_mode.
Operator displacement_generator(Complex alpha, std::size_t qubit, std::size_t mode, const SpaceLayout& layout);

/// Eigensystem of the truncated position quadrature b + b† (real symmetric
/// tridiagonal). Every truncated displacement exp(β b† − β* b) on the same
/// cutoff is diagonal in this basis up to fixed diagonal phases, so one
/// decomposition serves all β.
class QuadratureSpectrum {
   public:
    explicit QuadratureSpectrum(Index n_max);

    Index n_max() const { return nodes_.size() - 1; }
    const RealVector& nodes() const { return nodes_; }
    const Eigen::MatrixXd& vectors() const { return vectors_; }

    /// exp(β b† − β* b) on levels 0..n_max.
    Matrix displacement(Complex beta) const;

   private:
    RealVector nodes_;
    Eigen::MatrixXd vectors_;
};

/// Fock cutoff rule for one mode.
struct FixedTruncation {
    Index n_max = 64;
    bool operator==(const FixedTruncation&) const = default;
};

/// Smallest n_max whose thermal tail weight is below `tail_epsilon` and which
/// leaves `headroom` thermal standard deviations plus ⌈4|α|²⌉ levels above n̄.
struct AdaptiveTruncation {
    double tail_epsilon = 1e-8;
    Index headroom = 6;
    Index hard_cap = 2048;
    bool operator==(const AdaptiveTruncation&) const = default;
};

class TruncationPolicy {
   public:
    using Rule = std::variant<FixedTruncation, AdaptiveTruncation>;

    TruncationPolicy() : rule_(AdaptiveTruncation{}) {}
    TruncationPolicy(FixedTruncation f);
    TruncationPolicy(AdaptiveTruncation a);

    static TruncationPolicy fixed(Index n_max) { return TruncationPolicy(FixedTruncation{n_max}); }
    static TruncationPolicy adaptive(double tail_epsilon = 1e-8, Index headroom = 6, Index hard_cap = 2048) {
        return TruncationPolicy(AdaptiveTruncation{tail_epsilon, headroom, hard_cap});
    }

    const Rule& rule() const { return rule_; }
    bool is_fixed() const { return std::holds_alternative<FixedTruncation>(rule_); }

    bool operator==(const TruncationPolicy&) const = default;

   private:
    Rule rule_;
};

/// Bose–Einstein occupation 1/(e^{βω} − 1).
double thermal_occupation(double beta, double omega);

/// Σ_{n>n_max} (1−e^{−βω}) e^{−βωn} = e^{−βω(n_max+1)}.
double thermal_tail_weight(double beta, double omega, Index n_max);

/// Resolves the cutoff for a mode. Throws PolicyUnsatisfiable if the adaptive
/// rule needs more than `hard_cap` levels.
Index choose_truncation(const TruncationPolicy& policy, double beta, double omega, double alpha_abs);

}  // namespace dressed
