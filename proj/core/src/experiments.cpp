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

#include "dressed/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

#include "dressed/errors.hpp"
#include "dressed/hilbert.hpp"

namespace dressed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

HermitianSpectrum frame_spectrum(const Model& model, Frame frame, const Operator& dressing,
                                 const ControlSegment* segment) {
    if (frame == Frame::exact_dressed) {
        return dressed_frame_spectrum(model, dressing, segment);
    }
    return HermitianSpectrum::of(build_full_hamiltonian(model, frame, dressing, segment).matrix());
}

StateEnsemble initial_ensemble(const Model& model, const PureQubitState& psi, const Operator& dressing) {
    const DensityState rho_bath = thermal_state(build_bath_hamiltonian_local(model), model.params().beta);
    return dressed_initial_ensemble(psi, rho_bath, dressing);
}

Index cutoff_or_max(const TruncationPolicy& policy, double beta, double omega, double alpha_abs) {
    try {
        return choose_truncation(policy, beta, omega, alpha_abs);
    } catch (const PolicyUnsatisfiable&) {
        return std::numeric_limits<Index>::max();
    }
}

// Smallest β' ≥ β (to 0.1 %) whose adaptive cutoff fits kFastMaxLevels.
double fast_beta(const SweepSpec& spec, double omega_b, double alpha_abs) {
    if (spec.truncation.is_fixed()) {
        return spec.beta;
    }
    auto fits = [&](double beta) {
        return cutoff_or_max(spec.truncation, beta, omega_b, alpha_abs) <= kFastMaxLevels;
    };
    if (fits(spec.beta)) {
        return spec.beta;
    }
    double lo = spec.beta;
    double hi = 2.0 * spec.beta;
    for (int i = 0; !fits(hi); ++i) {
        if (i > 200) {
            throw PolicyUnsatisfiable("fast mode: no β brings the cutoff under " + std::to_string(kFastMaxLevels));
        }
        lo = hi;
        hi *= 2.0;
    }
    while (hi / lo > 1.001) {
        const double mid = std::sqrt(lo * hi);
        (fits(mid) ? hi : lo) = mid;
    }
    return hi;
}

void require_grid(const std::vector<double>& values, const char* name, bool positive) {
    if (values.empty()) {
        throw InvalidArgument(std::string(name) + " must not be empty");
    }
    for (double v : values) {
        if (!std::isfinite(v) || (positive ? v <= 0.0 : v < 0.0)) {
            throw InvalidArgument(std::string(name) + (positive ? " entries must be finite and > 0"
                                                                : " entries must be finite and >= 0"));
        }
    }
}

}  // namespace

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
    if (count == 0) {
        return {};
    }
    if (count == 1) {
        return {start};
    }
    std::vector<double> grid(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = start + step * static_cast<double>(i);
    }
    grid.back() = stop;
    return grid;
}

void SweepSpec::validate() const {
    if (!std::isfinite(omega0) || omega0 < 0.0) {
        throw InvalidArgument("omega0 must be finite and >= 0");
    }
    require_grid(mode_freqs, "mode_freqs", true);
    require_grid(alpha_grid, "alpha_grid", false);
    if (alpha_phases.empty()) {
        throw InvalidArgument("alpha_phases must not be empty");
    }
    for (double p : alpha_phases) {
        if (!std::isfinite(p)) {
            throw InvalidArgument("alpha_phases entries must be finite");
        }
    }
    if (!std::isfinite(t_final) || t_final <= 0.0) {
        throw InvalidArgument("t_final must be finite and > 0");
    }
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw InvalidArgument("beta must be finite and > 0");
    }
}

std::size_t SweepResult::failed() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok; }));
}

SweepRow run_sweep_row(const SweepSpec& spec, double omega_b, double alpha_abs, double alpha_phase) {
    SweepRow row;
    row.omega_b = omega_b;
    row.alpha_abs = alpha_abs;
    row.alpha_phase = alpha_phase;
    row.beta = spec.beta;
    const auto start = std::chrono::steady_clock::now();
    try {
        row.beta = spec.fast ? fast_beta(spec, omega_b, alpha_abs) : spec.beta;
        const ModelParams params{
            .qubit_freqs = {spec.omega0},
            .mode_freqs = {omega_b},
            .couplings = {std::polar(alpha_abs, alpha_phase)},
            .beta = row.beta,
            .truncation = spec.truncation,
        };
        const Model model(params);
        row.n_max = model.n_max()[0];
        row.tail_weight = model.tail_weight();

        const Operator dressing = build_dressing(model);
        const PureQubitState psi = haar_random_qubit_state(spec.seed, 1);
        const ControlSegment segment = ControlSegment::free(spec.t_final);
        const Propagator propagator(frame_spectrum(model, spec.frame, dressing, &segment), model.layout());
        const StateEnsemble final_state = propagator.propagate(initial_ensemble(model, psi, dressing), spec.t_final);
        const DensityState rho_s = reduced_system_state(final_state, spec.readout, dressing);
        const PureQubitState ideal = ideal_evolution(psi, std::span(&segment, 1), params);

        row.fidelity = fidelity(ideal, rho_s);
        row.trace_error = rho_s.trace_error();
        row.ok = true;
    } catch (const std::bad_alloc&) {
        row.error = "out of memory";
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    if (!row.ok) {
        row.fidelity = kNaN;
        row.trace_error = kNaN;
        row.tail_weight = kNaN;
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

SweepResult run_sweep(const SweepSpec& spec, std::size_t workers) {
    spec.validate();
    struct Task {
        double omega_b;
        double alpha_abs;
        double alpha_phase;
    };
    std::vector<Task> tasks;
    for (double omega_b : spec.mode_freqs) {
        for (double phase : spec.alpha_phases) {
            for (double alpha : spec.alpha_grid) {
                tasks.push_back({omega_b, alpha, phase});
            }
        }
    }
    SweepResult result;
    result.rows.resize(tasks.size());
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, tasks.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            result.rows[i] = run_sweep_row(spec, tasks[i].omega_b, tasks[i].alpha_abs, tasks[i].alpha_phase);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return result;
}

double fidelity_crossing(const SweepSpec& spec, double omega_b, double level, double lo, double hi,
                         double tolerance) {
    if (!(lo < hi) || lo < 0.0) {
        throw InvalidArgument("fidelity_crossing: need 0 <= lo < hi");
    }
    const double phase = spec.alpha_phases.empty() ? 0.0 : spec.alpha_phases.front();
    auto f = [&](double alpha) {
        const SweepRow row = run_sweep_row(spec, omega_b, alpha, phase);
        if (!row.ok) {
            throw Error("fidelity_crossing: |alpha| = " + std::to_string(alpha) + ": " + row.error);
        }
        return row.fidelity;
    };
    if (f(lo) < level) {
        return lo;
    }
    if (f(hi) >= level) {
        return hi;
    }
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

CircuitResult run_circuit(const CircuitSpec& spec) {
    spec.params.validate();
    const std::size_t n = spec.params.n_qubits();
    if (n > spec.max_qubits) {
        throw DimensionBudgetExceeded("circuit has " + std::to_string(n) + " qubits; the budget is " +
                                      std::to_string(spec.max_qubits));
    }
    for (const ControlSegment& segment : spec.segments) {
        segment.validate(n);
    }
    const Model model(spec.params);
    if (model.layout().total_dim() > spec.max_dimension) {
        throw DimensionBudgetExceeded("Hilbert-space dimension " + std::to_string(model.layout().total_dim()) +
                                      " exceeds the budget of " + std::to_string(spec.max_dimension));
    }

    CircuitResult result;
    result.n_max = model.n_max();
    result.tail_weight = model.tail_weight();

    const Operator dressing = build_dressing(model);
    PureQubitState ideal = haar_random_qubit_state(spec.seed, n);
    StateEnsemble state = initial_ensemble(model, ideal, dressing);

    auto record = [&](std::size_t index, double elapsed) {
        const DensityState rho_s = reduced_system_state(state, spec.readout, dressing);
        result.steps.push_back({index, elapsed, fidelity(ideal, rho_s), rho_s.trace_error()});
    };
    record(0, 0.0);
    double elapsed = 0.0;
    for (std::size_t k = 0; k < spec.segments.size(); ++k) {
        const ControlSegment& segment = spec.segments[k];
        const Propagator propagator(frame_spectrum(model, spec.frame, dressing, &segment), model.layout());
        state = propagator.propagate(state, segment.duration);
        ideal = ideal_evolution(ideal, std::span(&segment, 1), spec.params);
        elapsed += segment.duration;
        record(k + 1, elapsed);
    }
    return result;
}

namespace {

double fidelity_or_throw(const SweepSpec& spec, double omega_b, double alpha_abs, Index* n_max = nullptr) {
    const SweepRow row = run_sweep_row(spec, omega_b, alpha_abs, spec.alpha_phases.front());
    if (!row.ok) {
        throw Error("convergence: omega_b = " + std::to_string(omega_b) + ", |alpha| = " + std::to_string(alpha_abs) +
                    ": " + row.error);
    }
    if (n_max != nullptr) {
        *n_max = row.n_max;
    }
    return row.fidelity;
}

ConvergenceRow compare_doubled(const SweepSpec& spec, double omega_b, double alpha_abs, Index n_max,
                               double fidelity_at_n) {
    SweepSpec doubled = spec;
    doubled.truncation = TruncationPolicy::fixed(2 * n_max);
    const double f2 = fidelity_or_throw(doubled, omega_b, alpha_abs);
    return {omega_b, alpha_abs, n_max, fidelity_at_n, f2, std::abs(fidelity_at_n - f2)};
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const SweepSpec& spec, std::span<const Index> n_max_list) {
    spec.validate();
    if (n_max_list.empty()) {
        throw InvalidArgument("convergence_study: n_max list must not be empty");
    }
    for (std::size_t i = 0; i < n_max_list.size(); ++i) {
        if (n_max_list[i] < 2 || (i > 0 && n_max_list[i] <= n_max_list[i - 1])) {
            throw InvalidArgument("convergence_study: n_max list must be strictly increasing and >= 2");
        }
    }
    std::vector<ConvergenceRow> rows;
    for (double omega_b : spec.mode_freqs) {
        for (double alpha : spec.alpha_grid) {
            for (Index n : n_max_list) {
                SweepSpec at_n = spec;
                at_n.truncation = TruncationPolicy::fixed(n);
                rows.push_back(compare_doubled(spec, omega_b, alpha, n, fidelity_or_throw(at_n, omega_b, alpha)));
            }
        }
    }
    return rows;
}

std::vector<ConvergenceRow> policy_convergence(const SweepSpec& spec) {
    spec.validate();
    std::vector<ConvergenceRow> rows;
    for (double omega_b : spec.mode_freqs) {
        for (double alpha : spec.alpha_grid) {
            Index n = 0;
            const double f = fidelity_or_throw(spec, omega_b, alpha, &n);
            rows.push_back(compare_doubled(spec, omega_b, alpha, n, f));
        }
    }
    return rows;
}

bool InvariantReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.informational || c.passed; });
}

namespace {

std::string format_value(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

class CheckRecorder {
   public:
    explicit CheckRecorder(InvariantReport& report) : report_(report) {}

    void below(const std::string& name, double value, double threshold) {
        const bool ok = std::isfinite(value) && value < threshold;
        report_.checks.push_back({name, ok, value, threshold, format_value(value) + " < " + format_value(threshold)});
    }
    void above(const std::string& name, double value, double threshold) {
        const bool ok = std::isfinite(value) && value > threshold;
        report_.checks.push_back({name, ok, value, threshold, format_value(value) + " > " + format_value(threshold)});
    }
    void within(const std::string& name, double value, double lo, double hi, bool informational = false) {
        const bool ok = std::isfinite(value) && value >= lo && value <= hi;
        report_.checks.push_back({name, ok, value, hi,
                                  format_value(value) + " in [" + format_value(lo) + ", " + format_value(hi) + "]",
                                  informational});
    }
    void pass(const std::string& name, std::string detail) {
        report_.checks.push_back({name, true, 0.0, 0.0, std::move(detail)});
    }
    // Runs `body`; an exception becomes a failed check named `name`.
    template <class F>
    void guarded(const std::string& name, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            report_.checks.push_back({name, false, kNaN, 0.0, std::string("error: ") + e.what()});
        }
    }

   private:
    InvariantReport& report_;
};

double residual_ratio(const ModelParams& base, double alpha_abs) {
    auto residual_at = [&](double magnitude) {
        ModelParams p = base;
        for (Complex& a : p.couplings) {
            const double phase = std::abs(a) > 0.0 ? std::arg(a) : 0.0;
            a = std::polar(magnitude, phase);
        }
        return decoupling_residual(Model(p));
    };
    return residual_at(alpha_abs) / residual_at(0.5 * alpha_abs);
}

double max_coupling(const ModelParams& params) {
    double m = 0.0;
    for (const Complex& a : params.couplings) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

}  // namespace

InvariantReport verify_invariants(const VerifyOptions& options) {
    const ModelParams& params = options.params;
    params.validate();
    if (!(options.residual_alpha > 0.0) || !std::isfinite(options.residual_alpha)) {
        throw InvalidArgument("residual_alpha must be finite and > 0");
    }
    InvariantReport report;
    CheckRecorder check(report);

    const Model model(params);
    const SpaceLayout& layout = model.layout();
    const std::size_t n = model.n_qubits();
    const Operator dressing = build_dressing(model);
    const double alpha_max = max_coupling(params);

    std::mt19937_64 rng(options.seed);
    const double t = 2.0 * std::numbers::pi * (1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng));

    check.below("dressing_unitary", unitarity_defect(dressing.matrix()), 1e-10);
    if (layout.total_dim() <= 1024) {
        check.guarded("dressing_matches_generator", [&] {
            const Matrix h = Complex(0.0, -1.0) * dressing_generator(model).matrix();
            const Matrix reference = expm_hermitian(0.5 * (h + h.adjoint()), Complex(0.0, 1.0));
            check.below("dressing_matches_generator", max_abs(dressing.matrix() - reference), 1e-10);
        });
    }

    Matrix h_exact = build_full_hamiltonian(model, Frame::exact_dressed, dressing).matrix();
    if (options.inject_nonhermitian) {
        h_exact += Complex(0.0, 1e-3) * Matrix::Identity(h_exact.rows(), h_exact.cols());
    }
    const double h_scale = std::max(1.0, max_abs(h_exact));
    check.below("hamiltonian_hermitian_exact", hermiticity_defect(h_exact) / h_scale, 1e-10);
    check.guarded("hamiltonian_hermitian_first_order", [&] {
        const Matrix h = build_full_hamiltonian(model, Frame::literal_first_order, dressing).matrix();
        check.below("hamiltonian_hermitian_first_order", hermiticity_defect(h) / std::max(1.0, max_abs(h)), 1e-10);
    });

    for (std::size_t i = 0; i < n; ++i) {
        const Operator yi = pauli(PauliAxis::y, i, layout);
        check.below("commutes_with_Y" + std::to_string(i), commutator_norm(dressing, yi), 1e-10);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Operator yy = yi * pauli(PauliAxis::y, j, layout);
            check.below("commutes_with_Y" + std::to_string(i) + "Y" + std::to_string(j),
                        commutator_norm(dressing, yy), 1e-10);
        }
        const std::string zname = "moves_Z" + std::to_string(i);
        if (alpha_max == 0.0) {
            check.pass(zname, "alpha = 0: dressing is the identity");
        } else {
            check.above(zname, commutator_norm(dressing, pauli(PauliAxis::z, i, layout)), 0.1 * alpha_max);
        }
    }

    check.guarded("frame_identity", [&] {
        const Propagator numeric(Operator(h_exact, layout));
        const Matrix u = numeric.unitary(t);
        const Operator h0 = build_system_hamiltonian(model) + build_bath_hamiltonian(model);
        const Matrix u0 = HermitianSpectrum::of(h0.matrix()).exp(Complex(0.0, -t));
        check.below("frame_identity", max_abs(u - dressing.matrix() * u0 * dressing.matrix().adjoint()), 1e-9);
        const Propagator constructed(dressed_frame_spectrum(model, dressing), layout);
        check.below("constructed_spectrum", max_abs(u - constructed.unitary(t)), 1e-9);
    });

    check.guarded("energy_conservation", [&] {
        const PureQubitState psi = haar_random_qubit_state(options.seed, n);
        const DensityState rho_bath = thermal_state(build_bath_hamiltonian_local(model), params.beta);
        const DensityState rho0 = dressed_initial_state(psi, rho_bath, dressing);
        const Propagator propagator(Operator(h_exact, layout));
        const double e0 = (h_exact * rho0.matrix()).trace().real();
        double drift = 0.0;
        double trace_err = 0.0;
        double min_eig = 0.0;
        constexpr int kSteps = 8;
        for (int k = 1; k <= kSteps; ++k) {
            const double tk = 2.0 * std::numbers::pi * k / kSteps;
            const DensityState rho = propagator.propagate(rho0, tk);
            drift = std::max(drift, std::abs((h_exact * rho.matrix()).trace().real() - e0));
            const DensityState rho_s = reduced_system_state(rho, Readout::bare, dressing);
            trace_err = std::max(trace_err, rho_s.trace_error());
            min_eig = std::min(min_eig, rho_s.min_eigenvalue());
        }
        check.below("energy_conservation", drift / std::max(1.0, std::abs(e0)), 1e-9);
        check.below("reduced_trace", trace_err, 1e-10);
        check.above("reduced_positive", min_eig, -1e-10);

        const ControlSegment segment = ControlSegment::free(2.0 * std::numbers::pi);
        const DensityState rho_t = propagator.propagate(rho0, segment.duration);
        const PureQubitState ideal = ideal_evolution(psi, std::span(&segment, 1), params);
        check.below("dressed_readout_exact",
                    std::abs(1.0 - fidelity(ideal, reduced_system_state(rho_t, Readout::dressed, dressing))), 1e-9);
        const double f_bare = fidelity(ideal, reduced_system_state(rho_t, Readout::bare, dressing));
        check.within("bare_fidelity_bounded", f_bare, 0.0, 1.0 + 1e-12);
    });

    check.guarded("uncoupled_fidelity", [&] {
        ModelParams free_params = params;
        std::fill(free_params.couplings.begin(), free_params.couplings.end(), Complex(0.0));
        const Model free_model(free_params);
        const Operator identity = build_dressing(free_model);
        const PureQubitState psi = haar_random_qubit_state(options.seed, n);
        const Propagator propagator(dressed_frame_spectrum(free_model, identity), free_model.layout());
        const StateEnsemble rho = propagator.propagate(initial_ensemble(free_model, psi, identity), t);
        const ControlSegment segment = ControlSegment::free(t);
        const PureQubitState ideal = ideal_evolution(psi, std::span(&segment, 1), free_params);
        check.below("uncoupled_fidelity",
                    std::abs(1.0 - fidelity(ideal, reduced_system_state(rho, Readout::bare, identity))), 1e-10);
    });

    check.guarded("residual_scaling", [&] {
        ModelParams single = params;
        single.qubit_freqs = {params.qubit_freqs.front()};
        check.within("residual_scaling", residual_ratio(single, options.residual_alpha), 3.5, 4.5);
        if (n > 1) {
            check.within("residual_scaling_register", residual_ratio(params, options.residual_alpha), 3.5, 4.5, true);
        }
    });
    return report;
}

}  // namespace dressed
