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

#include "dressed/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "dressed/errors.hpp"
#include "test_support.hpp"

namespace dressed {
namespace {

using testing::max_diff;

ModelParams single(double omega0, double omega_b, Complex alpha, Index n_max) {
    return ModelParams{
        .qubit_freqs = {omega0},
        .mode_freqs = {omega_b},
        .couplings = {alpha},
        .beta = 1.0,
        .truncation = TruncationPolicy::fixed(n_max),
    };
}

ModelParams two_qubits(Complex alpha, Index n_max) {
    return ModelParams{
        .qubit_freqs = {2.0, 1.5},
        .mode_freqs = {2.0},
        .couplings = {alpha},
        .beta = 1.0,
        .truncation = TruncationPolicy::fixed(n_max),
    };
}

Matrix diag(std::initializer_list<double> values) {
    Matrix m = Matrix::Zero(values.size(), values.size());
    Index i = 0;
    for (double v : values) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

Matrix free_hamiltonian(const Model& model) {
    return (build_system_hamiltonian(model) + build_bath_hamiltonian(model)).matrix();
}

TEST(ModelParams, Validation) {
    EXPECT_NO_THROW(ModelParams{}.validate());
    ModelParams p;
    p.qubit_freqs = {};
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = ModelParams{};
    p.qubit_freqs = {-1.0};
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = ModelParams{};
    p.qubit_freqs = {0.0};
    EXPECT_NO_THROW(p.validate());
    p = ModelParams{};
    p.mode_freqs = {0.0};
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = ModelParams{};
    p.couplings = {0.1, 0.2};
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = ModelParams{};
    p.beta = 0.0;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = ModelParams{};
    p.couplings = {Complex(std::nan(""), 0.0)};
    EXPECT_THROW(p.validate(), InvalidArgument);
    EXPECT_THROW(Model{p}, InvalidArgument);
    EXPECT_THROW(Model(ModelParams{}, {}), InvalidArgument);
    EXPECT_THROW(Model(ModelParams{}, {0}), InvalidArgument);
    EXPECT_EQ(Model(ModelParams{}, {1}).layout().total_dim(), 4);
}

TEST(ModelStructure, ResolvesCutoffsAndLayout) {
    ModelParams p = two_qubits(0.2, 5);
    p.mode_freqs = {2.0, 10.0};
    p.couplings = {0.2, 0.0};
    p.truncation = TruncationPolicy::adaptive();
    const Model m(p);
    ASSERT_EQ(m.n_max().size(), 2u);
    EXPECT_EQ(m.n_max()[0], choose_truncation(p.truncation, 1.0, 2.0, 0.2));
    EXPECT_EQ(m.n_max()[1], choose_truncation(p.truncation, 1.0, 10.0, 0.0));
    EXPECT_EQ(m.layout().total_dim(), 4 * (m.n_max()[0] + 1) * (m.n_max()[1] + 1));
    EXPECT_EQ(m.system_layout().total_dim(), 4);
    EXPECT_EQ(m.mode_subsystem(1), 3u);
    EXPECT_DOUBLE_EQ(m.dressing_prefactor(), 0.25);
    const double t0 = thermal_tail_weight(1.0, 2.0, m.n_max()[0]);
    const double t1 = thermal_tail_weight(1.0, 10.0, m.n_max()[1]);
    EXPECT_NEAR(m.tail_weight(), 1.0 - (1.0 - t0) * (1.0 - t1), 1e-18);
    EXPECT_LT(m.tail_weight(), 2e-8);
}

TEST(SystemHamiltonian, SingleQubitDrift) {
    const Model m(single(2.0, 2.0, 0.0, 3));
    EXPECT_EQ(build_system_hamiltonian(m).matrix(), kron(testing::pauli_z(), Matrix::Identity(4, 4)));
}

TEST(SystemHamiltonian, SingleYControl) {
    const Model m(single(0.0, 2.0, 0.0, 2));
    const ControlSegment seg{1.0, {std::numbers::pi}, {}};
    EXPECT_LT(max_diff(build_system_hamiltonian(m, &seg).matrix(),
                       std::numbers::pi * kron(testing::pauli_y(), Matrix::Identity(3, 3))),
              1e-15);
}

TEST(SystemHamiltonian, YYCoupling) {
    ModelParams p = two_qubits(0.0, 2);
    p.qubit_freqs = {0.0, 0.0};
    const Model m(p, {1});
    ControlSegment seg = ControlSegment::free(1.0);
    seg.yy[{0, 1}] = 0.5;
    const Matrix expected = 0.5 * kron({testing::pauli_y(), testing::pauli_y(), Matrix::Identity(2, 2)});
    EXPECT_LT(max_diff(build_system_hamiltonian(m, &seg).matrix(), expected), 1e-15);
}

TEST(SystemHamiltonian, RejectsBadSegments) {
    const Model m(two_qubits(0.0, 2));
    ControlSegment seg = ControlSegment::free(1.0);
    seg.eta = {1.0};
    EXPECT_THROW(build_system_hamiltonian(m, &seg), BadSegment);
    seg = ControlSegment::free(1.0);
    seg.yy[{0, 2}] = 1.0;
    EXPECT_THROW(build_system_hamiltonian(m, &seg), BadSegment);
    seg = ControlSegment::free(1.0);
    seg.yy[{1, 1}] = 1.0;
    EXPECT_THROW(seg.validate(2), BadSegment);
    seg = ControlSegment::free(1.0);
    seg.yy[{1, 0}] = 1.0;
    EXPECT_THROW(seg.validate(2), BadSegment);
    EXPECT_THROW(ControlSegment::free(0.0).validate(1), BadSegment);
    EXPECT_THROW(ControlSegment::free(-1.0).validate(1), BadSegment);
}

TEST(BathHamiltonian, SingleModeSpectrum) {
    const Model m(single(2.0, 2.0, 0.0, 2));
    EXPECT_LT(max_diff(build_bath_hamiltonian(m).matrix(), kron(Matrix::Identity(2, 2), diag({0, 2, 4}))), 1e-15);
}

TEST(BathHamiltonian, TwoModesAdd) {
    ModelParams p = single(2.0, 1.0, 0.0, 2);
    p.mode_freqs = {1.0, 3.0};
    p.couplings = {0.0, 0.0};
    const Model m(p, {1, 1});
    EXPECT_LT(max_diff(build_bath_hamiltonian_local(m).matrix(), diag({0, 3, 1, 4})), 1e-15);
    RealVector e = bath_energies(m);
    std::sort(e.data(), e.data() + e.size());
    EXPECT_EQ(e, (RealVector(4) << 0, 1, 3, 4).finished());
}

TEST(BathHamiltonian, HighFrequencyMode) {
    const Model m(single(2.0, 10.0, 0.0, 2), {1});
    EXPECT_LT(max_diff(build_bath_hamiltonian(m).matrix(), kron(Matrix::Identity(2, 2), diag({0, 10}))), 1e-15);
}

TEST(Dressing, ZeroCouplingIsIdentity) {
    const Model m(two_qubits(0.0, 4));
    EXPECT_EQ(build_dressing(m).matrix(), Matrix::Identity(m.layout().total_dim(), m.layout().total_dim()));
}

TEST(Dressing, SingleQubitBlocksInYBasis) {
    const Index n_max = 32;
    const double alpha = 0.3;
    const Model m(single(2.0, 2.0, alpha, n_max));
    const Matrix b = ladder_matrix(n_max);
    auto displacement = [&](double beta) { return testing::expm_pade(Matrix(beta * (b.adjoint() - b))); };
    Vector up(2);
    up << 1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0));
    Vector down(2);
    down << 1.0 / std::sqrt(2.0), Complex(0.0, -1.0 / std::sqrt(2.0));
    const Matrix expected = kron(up * up.adjoint(), displacement(alpha / 2)) +
                            kron(down * down.adjoint(), displacement(-alpha / 2));
    EXPECT_LT(max_diff(build_dressing(m).matrix(), expected), 1e-12);
}

TEST(Dressing, MatchesBruteForceExponential) {
    std::vector<ModelParams> cases{single(2.0, 2.0, Complex(0.3, -0.2), 10), two_qubits(Complex(0.5, 0.1), 8)};
    ModelParams two_modes = two_qubits(0.4, 4);
    two_modes.mode_freqs = {2.0, 0.7};
    two_modes.couplings = {Complex(0.4, 0.0), Complex(0.0, 0.6)};
    cases.push_back(two_modes);
    for (const ModelParams& p : cases) {
        const Model m(p);
        const Matrix oracle = testing::expm_pade(dressing_generator(m).matrix());
        EXPECT_LT(max_diff(build_dressing(m).matrix(), oracle), 1e-12);
    }
}

TEST(Dressing, GeneratorCarriesPrefactor) {
    const Model m(two_qubits(0.5, 3));
    const SpaceLayout& l = m.layout();
    const Operator expected = 0.25 * 2.0 *
                              (displacement_generator(0.5, 0, 2, l) + displacement_generator(0.5, 1, 2, l));
    EXPECT_LT(max_diff(dressing_generator(m).matrix(), expected.matrix()), 1e-15);
}

TEST(Dressing, UnitaryAtLargeCutoff) {
    const Model m(single(2.0, 2.0, 0.5, 64));
    EXPECT_LT(unitarity_defect(build_dressing(m).matrix()), 1e-10);
}

TEST(Dressing, CommutesWithYAndYY) {
    for (const ModelParams& p : {single(2.0, 2.0, 0.3, 8), two_qubits(0.5, 16), two_qubits(Complex(0.1, 0.4), 16)}) {
        const Model m(p);
        const Operator v = build_dressing(m);
        const SpaceLayout& l = m.layout();
        for (std::size_t i = 0; i < m.n_qubits(); ++i) {
            EXPECT_LT(commutator_norm(v, pauli(PauliAxis::y, i, l)), 1e-10);
            EXPECT_GT(commutator_norm(v, pauli(PauliAxis::z, i, l)), 0.1 * std::abs(p.couplings[0]));
        }
        if (m.n_qubits() == 2) {
            EXPECT_LT(commutator_norm(v, pauli(PauliAxis::y, 0, l) * pauli(PauliAxis::y, 1, l)), 1e-10);
        }
    }
}

TEST(FullHamiltonian, ZeroCouplingBothFrames) {
    const Model m(two_qubits(0.0, 3));
    const Matrix h0 = free_hamiltonian(m);
    EXPECT_EQ(build_full_hamiltonian(m, Frame::exact_dressed).matrix(), h0);
    EXPECT_EQ(build_full_hamiltonian(m, Frame::literal_first_order).matrix(), h0);
}

TEST(FullHamiltonian, ExactFrameIsSimilarToFree) {
    const Model m(single(2.0, 2.0, 0.4, 12));
    const RealVector exact = HermitianSpectrum::of(build_full_hamiltonian(m, Frame::exact_dressed).matrix()).values();
    const RealVector free = HermitianSpectrum::of(free_hamiltonian(m)).values();
    EXPECT_LT((exact - free).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FullHamiltonian, AllFramesHermitian) {
    ControlSegment seg = ControlSegment::free(1.0);
    seg.eta = {0.3, -0.2};
    seg.yy[{0, 1}] = 0.7;
    const Model m(two_qubits(Complex(0.3, 0.2), 6));
    for (Frame f : {Frame::exact_dressed, Frame::literal_first_order}) {
        const Matrix h = build_full_hamiltonian(m, f, &seg).matrix();
        EXPECT_LT(hermiticity_defect(h), 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()));
    }
}

TEST(FullHamiltonian, LiteralMatchesExpandedFormForImaginaryCoupling) {
    const double omega0 = 2.0;
    const double omega_b = 1.3;
    const Complex alpha(0.0, 0.27);
    const Index n_max = 9;
    const Model m(single(omega0, omega_b, alpha, n_max));
    const Matrix b = ladder_matrix(n_max);
    const Matrix expanded = kron(testing::pauli_x(), Complex(0.0, 1.0) * (omega0 * alpha / 2.0) * (b + b.adjoint())) +
                           kron(testing::pauli_y(), (omega_b * alpha / 2.0) * (b - b.adjoint()));
    EXPECT_LT(max_diff(build_interaction(m).matrix(), expanded), 1e-12);
    EXPECT_LT(max_diff(build_full_hamiltonian(m, Frame::literal_first_order).matrix(), free_hamiltonian(m) + expanded),
              1e-12);
}

TEST(FullHamiltonian, AcceptsPrebuiltDressing) {
    const Model m(single(2.0, 2.0, 0.2, 6));
    const Operator v = build_dressing(m);
    EXPECT_EQ(build_full_hamiltonian(m, Frame::exact_dressed, v).matrix(),
              build_full_hamiltonian(m, Frame::exact_dressed).matrix());
    const Model other(single(2.0, 2.0, 0.2, 7));
    EXPECT_THROW(build_full_hamiltonian(other, Frame::exact_dressed, v), DimensionMismatch);
}

TEST(Residual, VanishesWithoutCoupling) { EXPECT_LT(decoupling_residual(Model(single(2.0, 2.0, 0.0, 16))), 1e-12); }

TEST(Residual, SecondOrderScaling) {
    for (double omega_b : {0.01, 2.0, 10.0}) {
        const double r1 = decoupling_residual(Model(single(2.0, omega_b, 0.1, 32)));
        const double r2 = decoupling_residual(Model(single(2.0, omega_b, 0.05, 32)));
        EXPECT_GE(r1 / r2, 3.5) << omega_b;
        EXPECT_LE(r1 / r2, 4.5) << omega_b;
    }
}

TEST(Residual, GrowsWithCoupling) {
    double previous = 0.0;
    for (double a : {0.05, 0.1, 0.2, 0.4}) {
        const double r = decoupling_residual(Model(single(2.0, 2.0, a, 32)));
        EXPECT_GT(r, previous);
        previous = r;
    }
}

TEST(FrameSpectrum, ConstructionMatchesNumericalDecomposition) {
    ControlSegment seg = ControlSegment::free(1.0);
    seg.eta = {0.4, 0.0};
    seg.yy[{0, 1}] = -0.3;
    const Model m(two_qubits(Complex(0.35, -0.1), 7));
    const Operator v = build_dressing(m);
    const HermitianSpectrum constructed = dressed_frame_spectrum(m, v, &seg);
    const Matrix h = build_full_hamiltonian(m, Frame::exact_dressed, v, &seg).matrix();
    EXPECT_LT(unitarity_defect(constructed.vectors()), 1e-10);
    EXPECT_LT(max_diff(constructed.matrix(), h), 1e-10);
    RealVector a = constructed.values();
    std::sort(a.data(), a.data() + a.size());
    EXPECT_LT((a - HermitianSpectrum::of(h).values()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FrameIdentity, PropagatorFactorsThroughDressing) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const Model m(single(2.0, 2.0, 0.3, 32));
    const Operator v = build_dressing(m);
    const Matrix h = build_full_hamiltonian(m, Frame::exact_dressed, v).matrix();
    const Matrix h0 = free_hamiltonian(m);
    for (int trial = 0; trial < 3; ++trial) {
        const double t = u(rng);
        const Matrix lhs = testing::expm_pade(Matrix(Complex(0.0, -t) * h));
        const Matrix rhs = v.matrix() * testing::expm_pade(Matrix(Complex(0.0, -t) * h0)) * v.matrix().adjoint();
        EXPECT_LT(max_diff(lhs, rhs), 1e-9) << t;
    }
}

}  // namespace
}  // namespace dressed
