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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dressed/dynamics.hpp"
#include "dressed/experiments.hpp"
#include "dressed/hilbert.hpp"
#include "dressed/linops.hpp"
#include "dressed/model.hpp"

namespace {

using namespace dressed;

Matrix random_hermitian(Index n) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            m(i, j) = Complex(g(rng), g(rng));
        }
    }
    return (m + m.adjoint()) / 2.0;
}

ModelParams single_mode(double omega_b, double alpha, Index n_max) {
    return ModelParams{
        .qubit_freqs = {2.0},
        .mode_freqs = {omega_b},
        .couplings = {alpha},
        .beta = 1.0,
        .truncation = TruncationPolicy::fixed(n_max),
    };
}

void BM_HermitianSpectrum(benchmark::State& state) {
    const Matrix h = random_hermitian(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(HermitianSpectrum::of(h));
    }
}
BENCHMARK(BM_HermitianSpectrum)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_ExpmHermitian(benchmark::State& state) {
    const Matrix h = random_hermitian(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(expm_hermitian(h, Complex(0.0, -1.0)));
    }
}
BENCHMARK(BM_ExpmHermitian)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_Kron(benchmark::State& state) {
    const Matrix a = random_hermitian(4);
    const Matrix b = random_hermitian(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kron(a, b));
    }
}
BENCHMARK(BM_Kron)->RangeMultiplier(4)->Range(16, 1024);

void BM_PartialTrace(benchmark::State& state) {
    const Index n_max = state.range(0);
    const std::vector<Index> dims{n_max + 1};
    const SpaceLayout layout = SpaceLayout::qubits_and_modes(2, dims);
    const Operator rho(random_hermitian(layout.total_dim()), layout);
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, {0, 1}));
    }
}
BENCHMARK(BM_PartialTrace)->RangeMultiplier(2)->Range(16, 128);

void BM_Displacement(benchmark::State& state) {
    const QuadratureSpectrum q(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(q.displacement(Complex(0.15, 0.05)));
    }
}
BENCHMARK(BM_Displacement)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_BuildDressing(benchmark::State& state) {
    const Model m(single_mode(2.0, 0.3, state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_dressing(m));
    }
}
BENCHMARK(BM_BuildDressing)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_ChooseTruncation(benchmark::State& state) {
    const TruncationPolicy policy = TruncationPolicy::adaptive();
    for (auto _ : state) {
        benchmark::DoNotOptimize(choose_truncation(policy, 1.0, 0.01, 0.3));
    }
}
BENCHMARK(BM_ChooseTruncation);

void BM_SweepRow(benchmark::State& state) {
    SweepSpec spec;
    spec.truncation = TruncationPolicy::fixed(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep_row(spec, 2.0, 0.3, 0.0));
    }
}
BENCHMARK(BM_SweepRow)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_TwoQubitCircuit(benchmark::State& state) {
    CircuitSpec c;
    c.params = ModelParams{
        .qubit_freqs = {2.0, 1.5},
        .mode_freqs = {2.0},
        .couplings = {0.3},
        .beta = 1.0,
        .truncation = TruncationPolicy::fixed(state.range(0)),
    };
    ControlSegment yy = ControlSegment::free(1.0);
    yy.yy[{0, 1}] = 0.5;
    c.segments = {ControlSegment{1.0, {0.3, 0.2}, {}}, yy};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_circuit(c));
    }
}
BENCHMARK(BM_TwoQubitCircuit)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
