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

// Numerical studies built on the model and dynamics layers: fidelity-vs-|α|
// sweeps, dressed-frame circuits, Fock-cutoff convergence and the invariant
// verification suite.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dressed/dynamics.hpp"
#include "dressed/model.hpp"

namespace dressed {

/// `count` evenly spaced points from `start` to `stop` inclusive.
std::vector<double> linear_grid(double start, double stop, std::size_t count);

/// Single qubit, single mode, fidelity at t_final for every (ω_b, phase, |α|).
struct SweepSpec {
    double omega0 = 2.0;
    std::vector<double> mode_freqs{0.01, 2.0, 10.0};
    std::vector<double> alpha_grid = linear_grid(0.0, 0.5, 21);
    /// More than one entry turns the sweep into a phase sweep.
    std::vector<double> alpha_phases{0.0};
    double t_final = 2.0 * std::numbers::pi;
    double beta = 1.0;
    std::uint64_t seed = 1;
    TruncationPolicy truncation;
    Frame frame = Frame::exact_dressed;
    Readout readout = Readout::bare;
    /// Rows whose cutoff would exceed kFastMaxLevels run at a raised β instead.
    bool fast = false;

    void validate() const;
    bool operator==(const SweepSpec&) const = default;
};

/// Cutoff ceiling applied by SweepSpec::fast.
inline constexpr Index kFastMaxLevels = 64;

struct SweepRow {
    double omega_b = 0.0;
    double alpha_abs = 0.0;
    double alpha_phase = 0.0;
    Index n_max = 0;
    double fidelity = 0.0;
    double trace_error = 0.0;
    double tail_weight = 0.0;
    double wall_time = 0.0;
    /// β actually simulated (differs from the spec only in fast mode).
    double beta = 0.0;
    bool ok = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    std::size_t failed() const;
};

/// One sweep row. Errors are captured in the row, never thrown.
SweepRow run_sweep_row(const SweepSpec& spec, double omega_b, double alpha_abs, double alpha_phase);

/// All rows in grid order (ω_b, then phase, then |α|), computed on up to `workers` threads.
SweepResult run_sweep(const SweepSpec& spec, std::size_t workers = 1);

/// Bisects for the |α| in [lo, hi] where the row fidelity falls through `level`.
/// Returns hi if F(hi) is still above `level` and lo if F(lo) is already below.
double fidelity_crossing(const SweepSpec& spec, double omega_b, double level, double lo, double hi,
                         double tolerance = 1e-6);

struct CircuitSpec {
    ModelParams params;
    std::vector<ControlSegment> segments;
    Frame frame = Frame::exact_dressed;
    Readout readout = Readout::bare;
    std::uint64_t seed = 1;
    std::size_t max_qubits = 2;
    Index max_dimension = 4096;

    bool operator==(const CircuitSpec&) const = default;
};

struct CircuitStep {
    /// 0 is the initial state; k is the state after segment k.
    std::size_t segment = 0;
    double elapsed = 0.0;
    double fidelity = 0.0;
    double trace_error = 0.0;
};

struct CircuitResult {
    std::vector<CircuitStep> steps;
    std::vector<Index> n_max;
    double tail_weight = 0.0;
};

/// Fidelity against ideal_evolution after each segment. Throws
/// DimensionBudgetExceeded beyond max_qubits or max_dimension.
CircuitResult run_circuit(const CircuitSpec& spec);

struct ConvergenceRow {
    double omega_b = 0.0;
    double alpha_abs = 0.0;
    Index n_max = 0;
    double fidelity = 0.0;
    double fidelity_doubled = 0.0;
    /// |F(n_max) − F(2 n_max)|.
    double difference = 0.0;
};

/// F at each fixed cutoff in `n_max_list` (strictly increasing) and at twice
/// that cutoff, for every (ω_b, |α|) of the spec at its first phase.
std::vector<ConvergenceRow> convergence_study(const SweepSpec& spec, std::span<const Index> n_max_list);

/// The same comparison at the cutoff the spec's own policy picks.
std::vector<ConvergenceRow> policy_convergence(const SweepSpec& spec);

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
    /// Reported for context; never affects the overall verdict.
    bool informational = false;
};

struct InvariantReport {
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

struct VerifyOptions {
    ModelParams params{
        .qubit_freqs = {2.0, 2.0},
        .mode_freqs = {2.0},
        .couplings = {0.5},
        .beta = 1.0,
        .truncation = TruncationPolicy::fixed(16),
    };
    /// |α| used for the residual-scaling ratio test.
    double residual_alpha = 0.1;
    std::uint64_t seed = 1;
    /// Adds an anti-Hermitian perturbation to the dressed Hamiltonian.
    bool inject_nonhermitian = false;

    bool operator==(const VerifyOptions&) const = default;
};

InvariantReport verify_invariants(const VerifyOptions& options);

}  // namespace dressed
