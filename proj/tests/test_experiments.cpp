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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dressed/errors.hpp"

namespace dressed {
namespace {

constexpr double kPi = std::numbers::pi;

SweepSpec small_spec() {
    SweepSpec s;
    s.mode_freqs = {2.0, 10.0};
    s.alpha_grid = {0.0, 0.1, 0.2, 0.3};
    return s;
}

// Bare-readout fidelity of one qubit after free precession for time t, with the
// bath branches displaced by ±α/2 (thermal characteristic function overlap).
double closed_form(const SweepSpec& spec, double omega_b, double alpha_abs) {
    const Vector a = haar_random_qubit_state(spec.seed, 1).amplitudes();
    const Complex c0 = a(0) * std::exp(Complex(0.0, -spec.omega0 / 2.0 * spec.t_final));
    const Complex c1 = a(1) * std::exp(Complex(0.0, spec.omega0 / 2.0 * spec.t_final));
    const double pp = std::norm((c0 - Complex(0.0, 1.0) * c1) / std::sqrt(2.0));
    const double pm = std::norm((c0 + Complex(0.0, 1.0) * c1) / std::sqrt(2.0));
    const double nbar = 1.0 / std::expm1(spec.beta * omega_b);
    return std::sqrt(1.0 - 2.0 * pp * pm * (1.0 - std::exp(-alpha_abs * alpha_abs * (nbar + 0.5))));
}

TEST(LinearGrid, Points) {
    const std::vector<double> g = linear_grid(0.0, 0.5, 21);
    ASSERT_EQ(g.size(), 21u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 0.5);
    EXPECT_NEAR(g[1], 0.025, 1e-15);
    EXPECT_EQ(linear_grid(0.3, 0.7, 1), std::vector<double>{0.3});
    EXPECT_TRUE(linear_grid(0.0, 1.0, 0).empty());
}

TEST(SweepSpec, Validation) {
    EXPECT_NO_THROW(SweepSpec{}.validate());
    SweepSpec s;
    s.mode_freqs = {};
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = SweepSpec{};
    s.alpha_grid = {};
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = SweepSpec{};
    s.alpha_grid = {-0.1};
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = SweepSpec{};
    s.mode_freqs = {0.0};
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = SweepSpec{};
    s.t_final = 0.0;
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = SweepSpec{};
    s.alpha_phases = {};
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = SweepSpec{};
    s.beta = -1.0;
    EXPECT_THROW(s.validate(), InvalidArgument);
    EXPECT_THROW(run_sweep(s), InvalidArgument);
}

TEST(Sweep, ZeroCouplingGivesUnitFidelity) {
    SweepSpec s = small_spec();
    s.alpha_grid = {0.0};
    const SweepResult r = run_sweep(s);
    ASSERT_EQ(r.rows.size(), 2u);
    for (const SweepRow& row : r.rows) {
        EXPECT_TRUE(row.ok);
        EXPECT_NEAR(row.fidelity, 1.0, 1e-9);
    }
}

TEST(Sweep, RowMatchesClosedForm) {
    SweepSpec s = small_spec();
    s.truncation = TruncationPolicy::fixed(32);
    for (double omega_b : {2.0, 10.0}) {
        for (double a : {0.1, 0.3, 0.5}) {
            const SweepRow row = run_sweep_row(s, omega_b, a, 0.0);
            ASSERT_TRUE(row.ok) << row.error;
            EXPECT_NEAR(row.fidelity, closed_form(s, omega_b, a), 1e-10);
            EXPECT_EQ(row.n_max, 32);
            EXPECT_LT(row.trace_error, 1e-9);
        }
    }
}

TEST(Sweep, AdaptiveRowReportsPolicyCutoff) {
    const SweepSpec s = small_spec();
    const SweepRow row = run_sweep_row(s, 2.0, 0.3, 0.0);
    ASSERT_TRUE(row.ok);
    EXPECT_EQ(row.n_max, choose_truncation(s.truncation, s.beta, 2.0, 0.3));
    EXPECT_LT(row.tail_weight, 1e-8);
    EXPECT_EQ(row.beta, s.beta);
    EXPECT_NEAR(row.fidelity, closed_form(s, 2.0, 0.3), 1e-7);
}

TEST(Sweep, GridOrderAndDeterminism) {
    SweepSpec s = small_spec();
    s.alpha_phases = {0.0, 1.0};
    const SweepResult a = run_sweep(s, 1);
    const SweepResult b = run_sweep(s, 3);
    ASSERT_EQ(a.rows.size(), 16u);
    std::size_t i = 0;
    for (double w : s.mode_freqs) {
        for (double phase : s.alpha_phases) {
            for (double alpha : s.alpha_grid) {
                EXPECT_EQ(a.rows[i].omega_b, w);
                EXPECT_EQ(a.rows[i].alpha_phase, phase);
                EXPECT_EQ(a.rows[i].alpha_abs, alpha);
                EXPECT_EQ(a.rows[i].fidelity, b.rows[i].fidelity);
                EXPECT_EQ(a.rows[i].trace_error, b.rows[i].trace_error);
                EXPECT_EQ(a.rows[i].n_max, b.rows[i].n_max);
                ++i;
            }
        }
    }
}

TEST(Sweep, PhaseDoesNotChangeBareFidelity) {
    const SweepSpec s = small_spec();
    const double f0 = run_sweep_row(s, 2.0, 0.3, 0.0).fidelity;
    EXPECT_NEAR(run_sweep_row(s, 2.0, 0.3, kPi / 3).fidelity, f0, 1e-10);
}

TEST(Sweep, FidelityDecreasesWithCoupling) {
    SweepSpec s = small_spec();
    s.alpha_grid = linear_grid(0.0, 0.5, 6);
    const SweepResult r = run_sweep(s);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        if (r.rows[i].omega_b == r.rows[i - 1].omega_b) {
            EXPECT_LE(r.rows[i].fidelity, r.rows[i - 1].fidelity + 1e-9);
        }
    }
}

TEST(Sweep, DressedReadoutIsExact) {
    SweepSpec s = small_spec();
    s.readout = Readout::dressed;
    for (const SweepRow& row : run_sweep(s).rows) {
        EXPECT_NEAR(row.fidelity, 1.0, 1e-9);
    }
}

TEST(Sweep, FailedRowsAreIsolated) {
    SweepSpec s = small_spec();
    s.mode_freqs = {0.01, 2.0};
    s.alpha_grid = {0.1};
    s.truncation = TruncationPolicy::adaptive(1e-8, 6, 40);
    const SweepResult r = run_sweep(s);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_EQ(r.failed(), 1u);
    EXPECT_FALSE(r.rows[0].ok);
    EXPECT_NE(r.rows[0].error.find("40"), std::string::npos) << r.rows[0].error;
    EXPECT_TRUE(std::isnan(r.rows[0].fidelity));
    EXPECT_TRUE(r.rows[1].ok);
    EXPECT_EQ(r.rows[1].fidelity, run_sweep_row(small_spec(), 2.0, 0.1, 0.0).fidelity);
}

TEST(Sweep, FastModeBoundsTheCutoff) {
    SweepSpec s = small_spec();
    s.mode_freqs = {0.01, 2.0};
    s.alpha_grid = {0.3};
    s.fast = true;
    const SweepResult r = run_sweep(s);
    ASSERT_EQ(r.failed(), 0u);
    EXPECT_LE(r.rows[0].n_max, kFastMaxLevels);
    EXPECT_GT(r.rows[0].beta, s.beta);
    EXPECT_EQ(r.rows[1].beta, s.beta);
    EXPECT_EQ(r.rows[1].fidelity, run_sweep_row(small_spec(), 2.0, 0.3, 0.0).fidelity);
}

TEST(FidelityCrossing, BracketsTheLevel) {
    const SweepSpec s = small_spec();
    const double a = fidelity_crossing(s, 10.0, 0.999, 0.0, 0.5, 1e-6);
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, 0.5);
    EXPECT_GT(run_sweep_row(s, 10.0, a - 1e-5, 0.0).fidelity, 0.999);
    EXPECT_LT(run_sweep_row(s, 10.0, a + 1e-5, 0.0).fidelity, 0.999);
    EXPECT_EQ(fidelity_crossing(s, 10.0, 0.5, 0.0, 0.2), 0.2);
    EXPECT_EQ(fidelity_crossing(s, 10.0, 0.999, 0.4, 0.5), 0.4);
    EXPECT_THROW(fidelity_crossing(s, 10.0, 0.999, 0.5, 0.5), InvalidArgument);
}

CircuitSpec two_qubit_circuit(Readout readout) {
    CircuitSpec c;
    c.params = ModelParams{
        .qubit_freqs = {0.0, 0.0},
        .mode_freqs = {2.0},
        .couplings = {0.3},
        .beta = 1.0,
        .truncation = TruncationPolicy::fixed(16),
    };
    c.readout = readout;
    return c;
}

TEST(Circuit, EmptyCircuitHasUnitFidelity) {
    for (Readout readout : {Readout::dressed, Readout::bare}) {
        CircuitSpec c = two_qubit_circuit(readout);
        if (readout == Readout::bare) {
            c.params.couplings = {0.0};
        }
        const CircuitResult r = run_circuit(c);
        ASSERT_EQ(r.steps.size(), 1u);
        EXPECT_EQ(r.steps[0].segment, 0u);
        EXPECT_EQ(r.steps[0].elapsed, 0.0);
        EXPECT_NEAR(r.steps[0].fidelity, 1.0, 1e-12);
        EXPECT_EQ(r.n_max, std::vector<Index>{16});
    }
}

TEST(Circuit, BareReadoutSeesInitialDressing) {
    SweepSpec sweep = small_spec();
    sweep.t_final = 1e-300;
    CircuitSpec c;
    c.params = ModelParams{
        .qubit_freqs = {sweep.omega0},
        .mode_freqs = {2.0},
        .couplings = {0.3},
        .beta = 1.0,
        .truncation = TruncationPolicy::fixed(32),
    };
    const CircuitResult r = run_circuit(c);
    EXPECT_NEAR(r.steps[0].fidelity, closed_form(sweep, 2.0, 0.3), 1e-10);
    EXPECT_LT(r.steps[0].fidelity, 1.0 - 1e-4);
}

TEST(Circuit, GatesAreTransparentUnderBareReadout) {
    CircuitSpec gates = two_qubit_circuit(Readout::bare);
    gates.segments.push_back(ControlSegment{1.0, {kPi / 4, 0.0}, {}});
    ControlSegment yy = ControlSegment::free(0.5);
    yy.yy[{0, 1}] = kPi / 4;
    gates.segments.push_back(yy);
    CircuitSpec baseline = gates;
    baseline.segments = {ControlSegment::free(1.0), ControlSegment::free(0.5)};
    const CircuitResult a = run_circuit(gates);
    const CircuitResult b = run_circuit(baseline);
    ASSERT_EQ(a.steps.size(), 3u);
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        EXPECT_EQ(a.steps[i].elapsed, b.steps[i].elapsed);
        EXPECT_NEAR(a.steps[i].fidelity, b.steps[i].fidelity, 1e-9) << i;
    }
    EXPECT_LT(a.steps.back().fidelity, 1.0 - 1e-4);
}

TEST(Circuit, DressedReadoutIsExact) {
    CircuitSpec c = two_qubit_circuit(Readout::dressed);
    c.params.qubit_freqs = {2.0, 1.4};
    c.params.couplings = {Complex(0.4, 0.2)};
    c.segments.push_back(ControlSegment{0.7, {0.3, -0.8}, {}});
    ControlSegment yy = ControlSegment::free(1.2);
    yy.yy[{0, 1}] = 0.6;
    yy.eta = {0.0, 0.5};
    c.segments.push_back(yy);
    c.segments.push_back(ControlSegment::free(2.0));
    const CircuitResult r = run_circuit(c);
    ASSERT_EQ(r.steps.size(), 4u);
    EXPECT_NEAR(r.steps.back().elapsed, 3.9, 1e-15);
    for (const CircuitStep& s : r.steps) {
        EXPECT_NEAR(s.fidelity, 1.0, 1e-9);
        EXPECT_LT(s.trace_error, 1e-9);
    }
}

TEST(Circuit, FreeSegmentMatchesSweepRow) {
    SweepSpec sweep = small_spec();
    CircuitSpec c;
    c.params = ModelParams{
        .qubit_freqs = {sweep.omega0},
        .mode_freqs = {2.0},
        .couplings = {0.3},
        .beta = sweep.beta,
        .truncation = sweep.truncation,
    };
    c.segments = {ControlSegment::free(sweep.t_final)};
    c.seed = sweep.seed;
    const CircuitResult r = run_circuit(c);
    EXPECT_NEAR(r.steps.back().fidelity, run_sweep_row(sweep, 2.0, 0.3, 0.0).fidelity, 1e-12);
}

TEST(Circuit, EnforcesBudgets) {
    CircuitSpec c = two_qubit_circuit(Readout::bare);
    c.params.qubit_freqs = {1.0, 1.0, 1.0};
    EXPECT_THROW(run_circuit(c), DimensionBudgetExceeded);
    c = two_qubit_circuit(Readout::bare);
    c.max_dimension = 40;
    EXPECT_THROW(run_circuit(c), DimensionBudgetExceeded);
    c = two_qubit_circuit(Readout::bare);
    c.segments = {ControlSegment{1.0, {0.1}, {}}};
    EXPECT_THROW(run_circuit(c), BadSegment);
}

TEST(Convergence, ZeroCouplingIsFlat) {
    SweepSpec s = small_spec();
    s.alpha_grid = {0.0};
    const std::vector<Index> list{4, 8};
    for (const ConvergenceRow& row : convergence_study(s, list)) {
        EXPECT_NEAR(row.fidelity, 1.0, 1e-12);
        EXPECT_NEAR(row.fidelity_doubled, 1.0, 1e-12);
        EXPECT_LT(row.difference, 1e-12);
    }
}

TEST(Convergence, DifferencesShrinkPastTheKnee) {
    SweepSpec s = small_spec();
    s.mode_freqs = {2.0};
    s.alpha_grid = {0.3};
    const std::vector<Index> list{4, 6, 8, 12};
    const std::vector<ConvergenceRow> rows = convergence_study(s, list);
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(rows[i].difference, rows[i - 1].difference);
        EXPECT_EQ(rows[i].n_max, list[i]);
    }
    const std::vector<Index> bad{8, 8};
    EXPECT_THROW(convergence_study(s, bad), InvalidArgument);
}

TEST(Convergence, PolicyCutoffIsConverged) {
    SweepSpec s = small_spec();
    s.alpha_grid = {0.3};
    for (const ConvergenceRow& row : policy_convergence(s)) {
        EXPECT_EQ(row.n_max, choose_truncation(s.truncation, s.beta, row.omega_b, 0.3));
        EXPECT_LT(row.difference, 1e-6) << row.omega_b;
    }
}

const CheckResult* find_check(const InvariantReport& r, const std::string& name) {
    auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.name == name; });
    return it == r.checks.end() ? nullptr : &*it;
}

TEST(Verify, DefaultsPass) {
    const InvariantReport r = verify_invariants(VerifyOptions{});
    for (const CheckResult& c : r.checks) {
        EXPECT_TRUE(c.passed || c.informational) << c.name << ": " << c.value << " " << c.detail;
    }
    EXPECT_TRUE(r.all_passed());
    const CheckResult* scaling = find_check(r, "residual_scaling");
    ASSERT_NE(scaling, nullptr);
    EXPECT_GE(scaling->value, 3.5);
    EXPECT_LE(scaling->value, 4.5);
    for (const char* name : {"commutes_with_Y0", "commutes_with_Y1", "commutes_with_Y0Y1"}) {
        const CheckResult* c = find_check(r, name);
        ASSERT_NE(c, nullptr) << name;
        EXPECT_LT(c->value, 1e-10);
    }
}

TEST(Verify, ZeroCouplingPasses) {
    VerifyOptions o;
    o.params.couplings = {0.0};
    EXPECT_TRUE(verify_invariants(o).all_passed());
}

TEST(Verify, InjectedDefectFails) {
    VerifyOptions o;
    o.inject_nonhermitian = true;
    const InvariantReport r = verify_invariants(o);
    EXPECT_FALSE(r.all_passed());
    const CheckResult* c = find_check(r, "hamiltonian_hermitian_exact");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed);
    EXPECT_TRUE(find_check(r, "commutes_with_Y0")->passed);
}

}  // namespace
}  // namespace dressed
