// Copyright 2026 The rbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the hot paths: uniform class sampling, GF(2) matrix
// products, the exhaustive two-qubit table build, sequence generation, the
// Pauli-frame Monte Carlo loop, and the decay fit.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rbkit/analysis.hpp"
#include "rbkit/benchgen.hpp"
#include "rbkit/rng.hpp"
#include "rbkit/sim.hpp"
#include "rbkit/symplectic.hpp"
#include "rbkit/synth.hpp"

namespace {

using namespace rbkit;

BenchmarkSequence sample_sequence(int n, int length) {
    shared_table_2q(TwoQubitGate::G);  // pre-warm the lazy table
    BenchmarkConfig config;
    config.n_qubits = n;
    config.lengths = {length};
    config.sequences_per_length = {1};
    config.master_seed = 9;
    return generate_set(config)[0];
}

void BM_RandomSymplectic(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    if (n <= 2) {
        enumerate_symplectic(n);  // pre-warm the cached enumeration
    }
    RandomStream rng(123);
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_symplectic(n, rng));
    }
}
BENCHMARK(BM_RandomSymplectic)->DenseRange(1, 4);

void BM_RandomSymplecticDirect(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RandomStream rng(123);
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_symplectic_direct(n, rng));
    }
}
BENCHMARK(BM_RandomSymplecticDirect)->DenseRange(1, 4);

void BM_SymplecticMul(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RandomStream rng(5);
    BinarySymplectic a = random_symplectic_direct(n, rng);
    BinarySymplectic b = random_symplectic_direct(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(symplectic_mul(a, b));
    }
}
BENCHMARK(BM_SymplecticMul)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_BuildTable2Q(benchmark::State& state) {
    for (auto _ : state) {
        SynthesisTable2Q table = build_table_2q(TwoQubitGate::G);
        benchmark::DoNotOptimize(table.total_two_qubit_count());
    }
}
BENCHMARK(BM_BuildTable2Q)->Unit(benchmark::kMillisecond);

void BM_GenerateSequence(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    shared_table_2q(TwoQubitGate::G);
    BenchmarkConfig config;
    config.n_qubits = n;
    config.lengths = {6};
    config.sequences_per_length = {1};
    RandomStream rng(77);
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_sequence(6, config, rng));
    }
}
BENCHMARK(BM_GenerateSequence)->DenseRange(1, 3);

void BM_StabilizerRuns(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    BenchmarkSequence seq = sample_sequence(n, 6);
    NoiseModel noise;
    noise.step_depol = 0.162;
    noise.prep_meas_error = 0.086;
    RandomStream rng(1);
    constexpr int kRuns = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_stabilizer(seq, noise, kRuns, rng));
    }
    state.SetItemsProcessed(state.iterations() * kRuns);
}
BENCHMARK(BM_StabilizerRuns)->DenseRange(1, 4);

void BM_DenseSuccessProbability(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    BenchmarkSequence seq = sample_sequence(n, 6);
    NoiseModel noise;
    noise.step_depol = 0.162;
    noise.prep_meas_error = 0.086;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dense_success_probability(seq, noise));
    }
}
BENCHMARK(BM_DenseSuccessProbability)->DenseRange(1, 3);

void BM_FitDecay(benchmark::State& state) {
    std::vector<LengthPoint> points;
    for (int l = 1; l <= 6; l++) {
        LengthPoint pt;
        pt.length = l;
        pt.mean_fidelity =
            0.25 + 0.75 * (1.0 - 4.0 / 3.0 * 0.086) * std::pow(1.0 - 4.0 / 3.0 * 0.162, l);
        pt.sem = 0.01;
        pt.n_sequences = 50;
        points.push_back(pt);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_decay(points, 2));
    }
}
BENCHMARK(BM_FitDecay);

}  // namespace

BENCHMARK_MAIN();
