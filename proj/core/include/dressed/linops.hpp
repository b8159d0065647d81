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

// Dense complex-matrix primitives: composite-space layouts, tensor products,
// Hermitian spectral functions, partial traces and norm checks.
//
// Norm conventions: Frobenius for commutators and residuals, max-abs for
// structural checks (Hermiticity, unitarity).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dressed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative tolerance used to accept a matrix as Hermitian.
inline constexpr double kHermiticityTolerance = 1e-10;

enum class SubsystemRole { qubit, mode };

struct Subsystem {
    SubsystemRole role;
    Index dim;

    bool operator==(const Subsystem&) const = default;
};

/// Ordered list of tensor factors. Qubits always precede bosonic modes.
class SpaceLayout {
   public:
    explicit SpaceLayout(std::vector<Subsystem> subsystems);

    /// `n_qubits` qubits followed by one mode per entry of `mode_dims`.
    static SpaceLayout qubits_and_modes(std::size_t n_qubits, std::span<const Index> mode_dims);
    static SpaceLayout qubits(std::size_t n_qubits);
    static SpaceLayout modes(std::span<const Index> mode_dims);

    std::size_t size() const { return subsystems_.size(); }
    const Subsystem& operator[](std::size_t i) const { return subsystems_[i]; }
    const std::vector<Subsystem>& subsystems() const { return subsystems_; }

    /// Product of all subsystem dimensions.
    Index total_dim() const { return total_dim_; }
    std::size_t n_qubits() const;
    std::size_t n_modes() const { return size() - n_qubits(); }
    /// Dimension of the qubit register (2^n_qubits).
    Index qubit_dim() const;
    /// Dimension of the mode factor (1 when there are no modes).
    Index bath_dim() const;

    /// Layout of the subsystems in `keep`, in their original order.
    SpaceLayout restricted(std::span<const std::size_t> keep) const;
    /// Concatenation `this ⊗ other`; the result must still list qubits first.
    SpaceLayout tensor(const SpaceLayout& other) const;

    bool operator==(const SpaceLayout& other) const { return subsystems_ == other.subsystems_; }

   private:
    std::vector<Subsystem> subsystems_;
    Index total_dim_ = 1;
};

/// Dense square matrix bound to the layout it acts on. Immutable once built.
class Operator {
   public:
    Operator(Matrix data, SpaceLayout layout);

    static Operator identity(const SpaceLayout& layout);
    static Operator zero(const SpaceLayout& layout);

    const Matrix& matrix() const { return data_; }
    const SpaceLayout& layout() const { return layout_; }
    Index dim() const { return data_.rows(); }

    Operator adjoint() const;

    Operator operator+(const Operator& other) const;
    Operator operator-(const Operator& other) const;
    Operator operator*(const Operator& other) const;
    Operator operator*(Complex scalar) const;

   private:
    Matrix data_;
    SpaceLayout layout_;
};

inline Operator operator*(Complex scalar, const Operator& op) { return op * scalar; }

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);
/// Left-to-right Kronecker product of all factors.
Matrix kron(std::initializer_list<Matrix> factors);
Matrix kron(std::span<const Matrix> factors);

/// Eigendecomposition h = U diag(λ) U† of a Hermitian matrix.
class HermitianSpectrum {
   public:
    /// Decomposes `h`; throws NonHermitianInput if ‖h − h†‖_max exceeds
    /// kHermiticityTolerance · max(1, ‖h‖_max).
    static HermitianSpectrum of(const Matrix& h);

    /// Adopts a known eigensystem. `vectors` must be unitary.
    HermitianSpectrum(RealVector values, Matrix vectors);

    const RealVector& values() const { return values_; }
    const Matrix& vectors() const { return vectors_; }
    Index dim() const { return values_.size(); }

    /// e^{s·h}.
    Matrix exp(Complex s) const;
    /// e^{−iht}·x, without forming the propagator.
    Matrix evolve(double t, const Matrix& x) const;
    /// Reassembles h.
    Matrix matrix() const;

   private:
    RealVector values_;
    Matrix vectors_;
};

/// e^{s·h} for Hermitian h via full eigendecomposition.
Matrix expm_hermitian(const Matrix& h, Complex s);

/// Reduced operator on the subsystems in `keep` (strictly increasing layout indices).
Operator partial_trace(const Operator& op, std::span<const std::size_t> keep);
Operator partial_trace(const Operator& op, std::initializer_list<std::size_t> keep);

/// ‖ab − ba‖_F. Throws DimensionMismatch unless the layouts agree.
double commutator_norm(const Operator& a, const Operator& b);

double max_abs(const Matrix& m);
/// ‖m − m†‖_max.
double hermiticity_defect(const Matrix& m);
/// ‖m m† − I‖_max.
double unitarity_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double rel_tol = kHermiticityTolerance);
bool all_finite(const Matrix& m);

}  // namespace dressed
