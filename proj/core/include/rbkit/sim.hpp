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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rbkit/benchgen.hpp"
#include "rbkit/circuit.hpp"
#include "rbkit/rng.hpp"

namespace rbkit {

/// Error knobs for sequence simulation. Average error probabilities eps are
/// converted internally to depolarization probabilities d = 2^n eps/(2^n-1),
/// so eps matches the per-step error probability of the decay model.
struct NoiseModel {
    /// Average error per randomized step, applied once after each step.
    double step_depol = 0.0;
    /// Preparation + final step + readout error, applied once per run
    /// before measurement.
    double prep_meas_error = 0.0;
    /// Error per interleaved gate, applied after each inserted circuit.
    double interleaved_gate_depol = 0.0;
    /// Optional per-gate-kind depolarizing, applied after each matching gate.
    std::map<GateKind, double> per_gate_depol;
    /// Classical per-qubit readout flip probability.
    double readout_flip = 0.0;
    /// Fractional rotation-angle error (dense engine only).
    double coherent_overrotation = 0.0;
};

/// Throws Error when a probability leaves [0,1] or the implied
/// depolarization probability exceeds 1.
void validate_noise(const NoiseModel& noise, int n);

/// Simulation output for one sequence. exact_p_success is filled by the
/// dense engine only.
struct SimResult {
    RunRecord record;
    std::optional<double> exact_p_success;
};

/// Stabilizer (Pauli-frame) Monte Carlo: exact for stochastic Pauli noise,
/// cost linear in circuit size. Throws UnsupportedGateError if the noise
/// model requests coherent over-rotation.
RunRecord simulate_stabilizer(const BenchmarkSequence& seq, const NoiseModel& noise, int runs,
                              RandomStream& rng);

/// Dense density-matrix engine (n <= 3): exact success probability plus a
/// binomially sampled run record. Supports coherent over-rotation.
SimResult simulate_dense(const BenchmarkSequence& seq, const NoiseModel& noise, int runs,
                         RandomStream& rng);

/// Exact success probability from the dense engine without sampling.
double dense_success_probability(const BenchmarkSequence& seq, const NoiseModel& noise);

/// Base and interleaved results for one benchmark configuration.
struct BenchmarkResult {
    std::vector<BenchmarkSequence> base_sequences;
    std::vector<BenchmarkSequence> interleaved_sequences;  // empty unless configured
    std::vector<RunRecord> base_records;
    std::vector<RunRecord> interleaved_records;
};

/// Generates all sequences for the config, simulates the base set and (when
/// config.interleaved_gate is set) the interleaved twins with the stabilizer
/// engine. Per-sequence run streams are derived from the master seed, so
/// results are deterministic and independent of `jobs`.
BenchmarkResult run_benchmark(const BenchmarkConfig& config, const NoiseModel& noise,
                              int jobs = 1);

}  // namespace rbkit
