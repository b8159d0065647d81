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

#include <algorithm>
#include <cmath>
#include <string>

#include "dressed/errors.hpp"

namespace dressed {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

Matrix mode_coupling(Complex alpha, Index n_max, bool antisymmetric) {
    const Matrix b = ladder_matrix(n_max);
    if (antisymmetric) {
        return alpha * b.adjoint() - std::conj(alpha) * b;
    }
    return alpha * b.adjoint() + std::conj(alpha) * b;
}

/// Σ_j Y_j on the qubit register.
Matrix collective_y(std::size_t n_qubits) {
    const SpaceLayout qubits = SpaceLayout::qubits(n_qubits);
    Matrix s = Matrix::Zero(qubits.total_dim(), qubits.total_dim());
    for (std::size_t j = 0; j < n_qubits; ++j) {
        s += pauli(PauliAxis::y, j, qubits).matrix();
    }
    return s;
}

Matrix hermitian_part_checked(const Matrix& h, const char* what) {
    if (!is_hermitian(h)) {
        throw NonHermitianResult(std::string(what) +
                                 " is not Hermitian: defect = " + std::to_string(hermiticity_defect(h)));
    }
    return 0.5 * (h + h.adjoint());
}

}  // namespace

void ModelParams::validate() const {
    if (qubit_freqs.empty()) {
        throw InvalidArgument("model needs at least one qubit");
    }
    for (double w : qubit_freqs) {
        if (!finite_nonneg(w)) {
            throw InvalidArgument("qubit frequencies must be finite and >= 0");
        }
    }
    if (mode_freqs.empty()) {
        throw InvalidArgument("model needs at least one bath mode");
    }
    for (double w : mode_freqs) {
        if (!finite_pos(w)) {
            throw InvalidArgument("mode frequencies must be finite and > 0");
        }
    }
    if (couplings.size() != mode_freqs.size()) {
        throw InvalidArgument("couplings and mode_freqs must have the same length");
    }
    for (Complex a : couplings) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InvalidArgument("couplings must be finite");
        }
    }
    if (!finite_pos(beta)) {
        throw InvalidArgument("beta must be finite and > 0");
    }
}

void ControlSegment::validate(std::size_t n_qubits) const {
    if (!(std::isfinite(duration) && duration > 0.0)) {
        throw BadSegment("segment duration must be > 0");
    }
    if (!eta.empty() && eta.size() != n_qubits) {
        throw BadSegment("segment has " + std::to_string(eta.size()) + " eta amplitudes for " +
                         std::to_string(n_qubits) + " qubits");
    }
    for (double e : eta) {
        if (!std::isfinite(e)) {
            throw BadSegment("segment eta amplitudes must be finite");
        }
    }
    for (const auto& [pair, value] : yy) {
        const auto [i, j] = pair;
        if (i == j) {
            throw BadSegment("segment YY coupling on the diagonal (" + std::to_string(i) + ")");
        }
        if (i > j) {
            throw BadSegment("segment YY couplings must be keyed with i < j");
        }
        if (j >= n_qubits) {
            throw BadSegment("segment YY coupling references qubit " + std::to_string(j) + " of " +
                             std::to_string(n_qubits));
        }
        if (!std::isfinite(value)) {
            throw BadSegment("segment YY couplings must be finite");
        }
    }
}

namespace {

std::vector<Index> policy_cutoffs(const ModelParams& params) {
    std::vector<Index> n;
    for (std::size_t k = 0; k < params.n_modes(); ++k) {
        n.push_back(choose_truncation(params.truncation, params.beta, params.mode_freqs[k],
                                      std::abs(params.couplings[k])));
    }
    return n;
}

SpaceLayout layout_for(std::size_t n_qubits, const std::vector<Index>& n_max) {
    std::vector<Index> dims;
    for (Index n : n_max) {
        dims.push_back(n + 1);
    }
    return SpaceLayout::qubits_and_modes(n_qubits, dims);
}

}  // namespace

Model::Model(ModelParams params)
    : params_((params.validate(), std::move(params))), n_max_(policy_cutoffs(params_)),
      layout_(layout_for(params_.n_qubits(), n_max_)) {}

Model::Model(ModelParams params, std::vector<Index> n_max)
    : params_((params.validate(), std::move(params))), n_max_(std::move(n_max)),
      layout_((n_max_.size() == params_.n_modes() ? void()
                                                  : throw InvalidArgument("need one cutoff per mode"),
               layout_for(params_.n_qubits(), n_max_))) {
    for (Index n : n_max_) {
        if (n < 1) {
            throw InvalidArgument("mode cutoff must be >= 1, got " + std::to_string(n));
        }
    }
}

SpaceLayout Model::system_layout() const { return SpaceLayout::qubits(n_qubits()); }

SpaceLayout Model::bath_layout() const {
    std::vector<Index> dims;
    for (Index n : n_max_) {
        dims.push_back(n + 1);
    }
    return SpaceLayout::modes(dims);
}

double Model::tail_weight() const {
    double kept = 1.0;
    for (std::size_t k = 0; k < n_modes(); ++k) {
        kept *= 1.0 - thermal_tail_weight(params_.beta, params_.mode_freqs[k], n_max_[k]);
    }
    return 1.0 - kept;
}

double Model::dressing_prefactor() const { return std::ldexp(1.0, -static_cast<int>(n_qubits())); }

Matrix system_hamiltonian_matrix(const ModelParams& params, const ControlSegment* segment) {
    const std::size_t n = params.n_qubits();
    if (segment != nullptr) {
        segment->validate(n);
    }
    const SpaceLayout qubits = SpaceLayout::qubits(n);
    Matrix h = Matrix::Zero(qubits.total_dim(), qubits.total_dim());
    for (std::size_t i = 0; i < n; ++i) {
        h += 0.5 * params.qubit_freqs[i] * pauli(PauliAxis::z, i, qubits).matrix();
    }
    if (segment == nullptr) {
        return h;
    }
    for (std::size_t i = 0; i < segment->eta.size(); ++i) {
        if (segment->eta[i] != 0.0) {
            h += segment->eta[i] * pauli(PauliAxis::y, i, qubits).matrix();
        }
    }
    for (const auto& [pair, value] : segment->yy) {
        h += value * (pauli(PauliAxis::y, pair.first, qubits).matrix() * pauli(PauliAxis::y, pair.second, qubits).matrix());
    }
    return h;
}

Operator build_system_hamiltonian(const Model& model, const ControlSegment* segment) {
    const Matrix hs = system_hamiltonian_matrix(model.params(), segment);
    const Index db = model.layout().bath_dim();
    return Operator(kron(hs, Matrix::Identity(db, db)), model.layout());
}

RealVector bath_energies(const Model& model) {
    RealVector e = RealVector::Zero(1);
    for (std::size_t k = 0; k < model.n_modes(); ++k) {
        const Index dim = model.n_max()[k] + 1;
        const double w = model.params().mode_freqs[k];
        RealVector next(e.size() * dim);
        for (Index i = 0; i < e.size(); ++i) {
            for (Index n = 0; n < dim; ++n) {
                next(i * dim + n) = e(i) + w * static_cast<double>(n);
            }
        }
        e = std::move(next);
    }
    return e;
}

Operator build_bath_hamiltonian_local(const Model& model) {
    const RealVector e = bath_energies(model);
    return Operator(e.cast<Complex>().asDiagonal().toDenseMatrix(), model.bath_layout());
}

Operator build_bath_hamiltonian(const Model& model) {
    const Index ds = model.layout().qubit_dim();
    return Operator(kron(Matrix::Identity(ds, ds), build_bath_hamiltonian_local(model).matrix()), model.layout());
}

Operator dressing_generator(const Model& model) {
    const SpaceLayout& layout = model.layout();
    Matrix g = Matrix::Zero(layout.total_dim(), layout.total_dim());
    // displacement_generator carries ½; rescale to the 2^{−N} prefactor.
    const double rescale = 2.0 * model.dressing_prefactor();
    for (std::size_t j = 0; j < model.n_qubits(); ++j) {
        for (std::size_t k = 0; k < model.n_modes(); ++k) {
            g += rescale * displacement_generator(model.params().couplings[k], j, model.mode_subsystem(k), layout).matrix();
        }
    }
    return Operator(std::move(g), layout);
}

namespace {

using DisplacementCache = std::vector<std::pair<Complex, Matrix>>;

// D(0) = I and D(−β) = D(β)†, so each Y-eigenvalue sector pair costs one product.
Matrix cached_displacement(const QuadratureSpectrum& q, DisplacementCache& cache, Complex beta) {
    if (beta == Complex(0.0, 0.0)) {
        return Matrix::Identity(q.n_max() + 1, q.n_max() + 1);
    }
    for (const auto& [b, d] : cache) {
        if (b == beta) {
            return d;
        }
        if (b == -beta) {
            return d.adjoint();
        }
    }
    cache.emplace_back(beta, q.displacement(beta));
    return cache.back().second;
}

}  // namespace

Operator build_dressing(const Model& model) {
    const SpaceLayout& layout = model.layout();
    const Index ds = layout.qubit_dim();
    const Index db = layout.bath_dim();
    const double c = model.dressing_prefactor();
    const auto& couplings = model.params().couplings;
    if (std::all_of(couplings.begin(), couplings.end(), [](Complex a) { return a == Complex(0.0, 0.0); })) {
        return Operator::identity(layout);
    }

    const HermitianSpectrum sy = HermitianSpectrum::of(collective_y(model.n_qubits()));
    std::vector<QuadratureSpectrum> quadratures;
    for (Index n : model.n_max()) {
        quadratures.emplace_back(n);
    }
    std::vector<DisplacementCache> cache(model.n_modes());

    Matrix v = Matrix::Zero(layout.total_dim(), layout.total_dim());
    // Eigenvalues of Σ_j Y_j are the integers −N, −N+2, ..., N.
    Index start = 0;
    while (start < sy.dim()) {
        const double m = std::round(sy.values()(start));
        Index stop = start;
        while (stop < sy.dim() && std::abs(sy.values()(stop) - m) < 1e-6) {
            ++stop;
        }
        const Matrix u = sy.vectors().middleCols(start, stop - start);
        const Matrix proj = u * u.adjoint();

        std::vector<Matrix> displacements;
        for (std::size_t k = 0; k < model.n_modes(); ++k) {
            displacements.push_back(cached_displacement(quadratures[k], cache[k], c * m * couplings[k]));
        }
        const Matrix bath_block = kron(std::span<const Matrix>(displacements));
        for (Index b = 0; b < ds; ++b) {
            for (Index a = 0; a < ds; ++a) {
                if (proj(a, b) != Complex(0.0, 0.0)) {
                    v.block(a * db, b * db, db, db) += proj(a, b) * bath_block;
                }
            }
        }
        start = stop;
    }
    return Operator(std::move(v), layout);
}

Operator build_interaction(const Model& model) {
    const SpaceLayout& layout = model.layout();
    const ModelParams& p = model.params();
    const Matrix x = pauli_matrix(PauliAxis::x);
    const Matrix y = pauli_matrix(PauliAxis::y);
    Matrix h = Matrix::Zero(layout.total_dim(), layout.total_dim());
    for (std::size_t i = 0; i < model.n_qubits(); ++i) {
        for (std::size_t k = 0; k < model.n_modes(); ++k) {
            const std::size_t mode = model.mode_subsystem(k);
            const Index n_max = model.n_max()[k];
            const LocalFactor x_term[] = {
                {i, Complex(0.0, 0.5 * p.qubit_freqs[i]) * x},
                {mode, mode_coupling(p.couplings[k], n_max, true)},
            };
            const LocalFactor y_term[] = {
                {i, -0.5 * p.mode_freqs[k] * y},
                {mode, mode_coupling(p.couplings[k], n_max, false)},
            };
            h += embed(x_term, layout).matrix();
            h += embed(y_term, layout).matrix();
        }
    }
    return Operator(hermitian_part_checked(h, "H_SB"), layout);
}

Operator build_full_hamiltonian(const Model& model, Frame frame, const ControlSegment* segment) {
    if (frame == Frame::literal_first_order) {
        return build_full_hamiltonian(model, frame, Operator::identity(model.layout()), segment);
    }
    return build_full_hamiltonian(model, frame, build_dressing(model), segment);
}

Operator build_full_hamiltonian(const Model& model, Frame frame, const Operator& dressing,
                                const ControlSegment* segment) {
    const Operator h0 = build_system_hamiltonian(model, segment) + build_bath_hamiltonian(model);
    if (frame == Frame::literal_first_order) {
        return h0 + build_interaction(model);
    }
    if (!(dressing.layout() == model.layout())) {
        throw DimensionMismatch("dressing does not act on the model layout");
    }
    const Matrix& v = dressing.matrix();
    const Matrix h = v * h0.matrix() * v.adjoint();
    return Operator(hermitian_part_checked(h, "V H_0 V†"), model.layout());
}

double decoupling_residual(const Model& model) {
    const Operator v = build_dressing(model);
    const Operator h0 = build_system_hamiltonian(model) + build_bath_hamiltonian(model);
    const Matrix transformed = v.matrix() * h0.matrix() * v.matrix().adjoint();
    return (transformed - h0.matrix() - build_interaction(model).matrix()).norm();
}

HermitianSpectrum dressed_frame_spectrum(const Model& model, const Operator& dressing, const ControlSegment* segment) {
    if (!(dressing.layout() == model.layout())) {
        throw DimensionMismatch("dressing does not act on the model layout");
    }
    const HermitianSpectrum hs = HermitianSpectrum::of(system_hamiltonian_matrix(model.params(), segment));
    const RealVector eb = bath_energies(model);
    const Index ds = hs.dim();
    const Index db = eb.size();
    const Matrix& v = dressing.matrix();

    RealVector values(ds * db);
    Matrix vectors = Matrix::Zero(v.rows(), v.cols());
    for (Index a = 0; a < ds; ++a) {
        values.segment(a * db, db) = eb.array() + hs.values()(a);
        for (Index k = 0; k < ds; ++k) {
            const Complex u = hs.vectors()(k, a);
            if (u != Complex(0.0, 0.0)) {
                vectors.middleCols(a * db, db) += u * v.middleCols(k * db, db);
            }
        }
    }
    return HermitianSpectrum(std::move(values), std::move(vectors));
}

}  // namespace dressed
