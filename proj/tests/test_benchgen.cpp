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

#include "rbkit/benchgen.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "dense_reference.hpp"
#include "rbkit/error.hpp"
#include "rbkit/synth.hpp"

namespace rbkit {
namespace {

GateCircuit whole_sequence_circuit(const BenchmarkSequence& seq) {
    GateCircuit c;
    auto add_pulses = [&](const std::vector<PauliPulse>& pulses) {
        for (size_t q = 0; q < pulses.size(); q++) {
            c.push_back(Gate::pauli(static_cast<int>(q), pulses[q].axis, pulses[q].sign));
        }
    };
    for (const StepRecord& step : seq.steps) {
        add_pulses(step.pulses);
        c.insert(c.end(), step.circuit.begin(), step.circuit.end());
        if (seq.interleaved) {
            c.insert(c.end(), seq.interleaved->begin(), seq.interleaved->end());
        }
    }
    add_pulses(seq.final_step.pulses);
    c.insert(c.end(), seq.final_step.circuit.begin(), seq.final_step.circuit.end());
    return c;
}

/// Applies the sequence to the all-spin-down preparation with the dense
/// oracle and checks the prediction: a unit-probability basis state for the
/// basis strategies, a deterministic sigma_z product for RANDOM_JOINT_Z.
void check_prediction_dense(const BenchmarkSequence& seq) {
    int n = seq.n_qubits;
    size_t dim = size_t{1} << n;
    testref::Mat u = testref::dense_circuit(whole_sequence_circuit(seq), n);
    size_t prep = dim - 1;  // every qubit in the -1 eigenstate (bit 1)
    std::vector<testref::Cx> state(dim);
    for (size_t r = 0; r < dim; r++) {
        state[r] = u[r * dim + prep];
    }
    if (!seq.prediction.is_parity()) {
        REQUIRE(seq.prediction.bits.size() == static_cast<size_t>(n));
        size_t idx = 0;
        for (int q = 0; q < n; q++) {
            if (seq.prediction.bits[static_cast<size_t>(q)] == '0') {
                idx |= size_t{1} << (n - 1 - q);
            }
        }
        REQUIRE(std::abs(std::abs(state[idx]) - 1.0) < 1e-9);
    } else {
        REQUIRE(seq.prediction.mask != 0);
        double expect = 0.0;
        for (size_t b = 0; b < dim; b++) {
            double p = std::norm(state[b]);
            int parity = 1;
            for (int q = 0; q < n; q++) {
                if (((seq.prediction.mask >> q) & 1) && ((b >> (n - 1 - q)) & 1)) {
                    parity = -parity;
                }
            }
            expect += p * parity;
        }
        REQUIRE(std::abs(expect - seq.prediction.parity) < 1e-9);
    }
    OutcomePrediction recomputed = predict_outcome(seq);
    REQUIRE(recomputed == seq.prediction);
}

BenchmarkConfig config_for(int n, FinalStepStrategy strategy, uint64_t seed) {
    BenchmarkConfig config;
    config.n_qubits = n;
    config.lengths = {1, 2, 3, 4, 5, 6};
    config.sequences_per_length = {1, 1, 1, 1, 1, 1};
    config.final_strategy = strategy;
    config.master_seed = seed;
    return config;
}

std::string sequence_signature(const BenchmarkSequence& seq) {
    std::string s = std::to_string(seq.id) + "|" + std::to_string(seq.length) + "|";
    s += serialize_circuit(whole_sequence_circuit(seq));
    s += "|" + seq.prediction.bits + "/" + std::to_string(seq.prediction.mask) + "/" +
         std::to_string(seq.prediction.parity);
    return s;
}

}  // namespace

TEST_SUITE("benchgen") {

TEST_CASE("step draws are uniform over pulses and classes") {
    RandomStream rng = RandomStream::derive(0xb1u, rng_domain::kGenerate, 0);
    const int kSteps = 80000;
    // pulse_counts[q][axis * 2 + (sign<0)] over 8 options per qubit
    int pulse_counts[2][8] = {};
    std::map<uint64_t, int> class_counts;
    long two_qubit_total = 0;
    long two_qubit_first = 0;
    for (int i = 0; i < kSteps; i++) {
        StepRecord step = generate_step(2, rng);
        for (int q = 0; q < 2; q++) {
            int axis = static_cast<int>(step.pulses[static_cast<size_t>(q)].axis);
            int neg = step.pulses[static_cast<size_t>(q)].sign < 0 ? 1 : 0;
            pulse_counts[q][axis * 2 + neg]++;
        }
        class_counts[step.cls.packed_key()]++;
        int tq = 0;
        for (const Gate& g : step.circuit) {
            tq += g.is_two_qubit() ? 1 : 0;
        }
        two_qubit_total += tq;
        if (i < 10000) {
            two_qubit_first += tq;
        }
    }
    // Each of 8 pulse options: expected 10000, 5 sigma ~ 468.
    for (int q = 0; q < 2; q++) {
        for (int o = 0; o < 8; o++) {
            CHECK(std::abs(pulse_counts[q][o] - 10000) < 468);
        }
    }
    // Chi-square over the 720 classes; the 0.999 quantile of chi2(719) by
    // the Wilson-Hilferty approximation is about 842.
    CHECK(class_counts.size() == 720);
    double expected = kSteps / 720.0;
    double chi2 = 0.0;
    for (const auto& [key, count] : class_counts) {
        double d = count - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 842.0);
    // Mean entanglers per step: 3/2 exactly in expectation.
    CHECK(std::abs(two_qubit_first / 10000.0 - 1.5) < 0.02);
    CHECK(std::abs(two_qubit_total / static_cast<double>(kSteps) - 1.5) < 0.01);
}

TEST_CASE("trivial one-step sequence predicts the prepared state") {
    BenchmarkSequence seq;
    seq.n_qubits = 2;
    seq.length = 1;
    seq.strategy = FinalStepStrategy::FULL_INVERSE;
    StepRecord step;
    step.pulses = {PauliPulse{Axis::I, 1}, PauliPulse{Axis::I, 1}};
    step.cls = BinarySymplectic::identity(2);
    step.circuit = {};
    seq.steps.push_back(step);
    seq.final_step.pulses = {PauliPulse{Axis::I, 1}, PauliPulse{Axis::I, 1}};
    BenchmarkSequence done = with_interleaved(seq, std::nullopt);
    CHECK(done.final_step.cls == BinarySymplectic::identity(2));
    CHECK(done.final_step.circuit.empty());
    CHECK(done.prediction.bits == "00");
    CHECK(!done.prediction.is_parity());
    check_prediction_dense(done);
}

TEST_CASE("noiseless dense evolution always lands on the prediction") {
    int id = 0;
    for (FinalStepStrategy strategy : {FinalStepStrategy::FULL_INVERSE,
                                       FinalStepStrategy::RANDOM_LOGICAL,
                                       FinalStepStrategy::RANDOM_JOINT_Z}) {
        for (int n : {1, 2, 3}) {
            BenchmarkConfig config = config_for(n, strategy, 0xc0ffee);
            for (int l : {1, 2, 3, 4, 5, 6}) {
                for (int rep = 0; rep < 4; rep++) {
                    RandomStream rng =
                        RandomStream::derive(config.master_seed, rng_domain::kGenerate,
                                             static_cast<uint64_t>(id++));
                    BenchmarkSequence seq = generate_sequence(l, config, rng);
                    check_prediction_dense(seq);
                }
            }
        }
    }
}

TEST_CASE("random logical finals stay in the CNOT subgroup") {
    BenchmarkConfig config = config_for(2, FinalStepStrategy::RANDOM_LOGICAL, 7);
    std::map<uint64_t, int> logical_counts;
    for (int i = 0; i < 3000; i++) {
        RandomStream rng = RandomStream::derive(7, rng_domain::kGenerate,
                                                static_cast<uint64_t>(i));
        BenchmarkSequence seq = generate_sequence(2, config, rng);
        REQUIRE(seq.final_step.logical_cls.has_value());
        const BinarySymplectic& lg = *seq.final_step.logical_cls;
        // Block-diagonal: x rows carry no z bits and vice versa.
        int n = 2;
        for (int i2 = 0; i2 < n; i2++) {
            for (int j = 0; j < n; j++) {
                REQUIRE(lg.get(i2, n + j) == false);
                REQUIRE(lg.get(n + i2, j) == false);
            }
        }
        // Total class of the sequence equals the logical element.
        BinarySymplectic total = BinarySymplectic::identity(n);
        for (const StepRecord& s : seq.steps) {
            total = symplectic_mul(total, s.cls);
        }
        total = symplectic_mul(total, seq.final_step.cls);
        REQUIRE(total == lg);
        logical_counts[lg.packed_key()]++;
    }
    // |GL(2,2)| = 6; uniformity within 5 sigma of 500 each.
    CHECK(logical_counts.size() == 6);
    for (const auto& [key, count] : logical_counts) {
        CHECK(std::abs(count - 500) < 5 * std::sqrt(3000 * (1.0 / 6) * (5.0 / 6)));
    }
}

TEST_CASE("joint-Z masks and parities are well formed") {
    BenchmarkConfig config = config_for(2, FinalStepStrategy::RANDOM_JOINT_Z, 11);
    std::map<uint64_t, int> mask_counts;
    for (int i = 0; i < 2000; i++) {
        RandomStream rng = RandomStream::derive(11, rng_domain::kGenerate,
                                                static_cast<uint64_t>(i));
        BenchmarkSequence seq = generate_sequence(3, config, rng);
        REQUIRE(seq.prediction.is_parity());
        REQUIRE(seq.prediction.mask != 0);
        REQUIRE(seq.prediction.mask < 4);
        REQUIRE((seq.prediction.parity == 1 || seq.prediction.parity == -1));
        CHECK(seq.prediction.bits.empty());
        mask_counts[seq.prediction.mask]++;
    }
    // All three nonzero masks occur.
    CHECK(mask_counts.size() == 3);
}

TEST_CASE("interleaving shares steps and recomputes the final inversion") {
    BenchmarkConfig config = config_for(2, FinalStepStrategy::FULL_INVERSE, 23);
    GateCircuit gate = {Gate::g(0, 1)};
    for (int i = 0; i < 40; i++) {
        RandomStream rng = RandomStream::derive(23, rng_domain::kGenerate,
                                                static_cast<uint64_t>(i));
        BenchmarkSequence base = generate_sequence(4, config, rng);
        BenchmarkSequence twin = interleave(base, gate);
        REQUIRE(twin.length == base.length);
        REQUIRE(twin.steps.size() == base.steps.size());
        for (size_t s = 0; s < base.steps.size(); s++) {
            REQUIRE(twin.steps[s].cls == base.steps[s].cls);
            REQUIRE(serialize_circuit(twin.steps[s].circuit) ==
                    serialize_circuit(base.steps[s].circuit));
            REQUIRE(twin.steps[s].pulses == base.steps[s].pulses);
        }
        REQUIRE(twin.final_step.pulses == base.final_step.pulses);
        REQUIRE(twin.interleaved.has_value());
        check_prediction_dense(twin);
        // Stripping the gate restores the base sequence exactly.
        BenchmarkSequence stripped = with_interleaved(twin, std::nullopt);
        REQUIRE(sequence_signature(stripped) == sequence_signature(base));
    }
}

TEST_CASE("interleaving the identity gate changes nothing observable") {
    BenchmarkConfig config = config_for(2, FinalStepStrategy::FULL_INVERSE, 29);
    RandomStream rng = RandomStream::derive(29, rng_domain::kGenerate, 0);
    BenchmarkSequence base = generate_sequence(3, config, rng);
    BenchmarkSequence twin = interleave(base, {Gate::id(0)});
    CHECK(twin.prediction == base.prediction);
    CHECK(twin.final_step.cls == base.final_step.cls);
    CHECK(serialize_circuit(twin.final_step.circuit) ==
          serialize_circuit(base.final_step.circuit));
}

TEST_CASE("interleaving applies to every strategy") {
    for (FinalStepStrategy strategy : {FinalStepStrategy::RANDOM_LOGICAL,
                                       FinalStepStrategy::RANDOM_JOINT_Z}) {
        BenchmarkConfig config = config_for(2, strategy, 31);
        for (int i = 0; i < 20; i++) {
            RandomStream rng = RandomStream::derive(31, rng_domain::kGenerate,
                                                    static_cast<uint64_t>(i));
            BenchmarkSequence base = generate_sequence(3, config, rng);
            BenchmarkSequence twin = interleave(base, {Gate::cnot(1, 0)});
            check_prediction_dense(twin);
            BenchmarkSequence stripped = with_interleaved(twin, std::nullopt);
            REQUIRE(sequence_signature(stripped) == sequence_signature(base));
        }
    }
}

TEST_CASE("interleave rejects invalid gates") {
    BenchmarkConfig config = config_for(2, FinalStepStrategy::FULL_INVERSE, 37);
    RandomStream rng = RandomStream::derive(37, rng_domain::kGenerate, 0);
    BenchmarkSequence base = generate_sequence(2, config, rng);
    CHECK_THROWS_AS(interleave(base, {Gate::rx(5, 1)}), Error);
    CHECK_THROWS_AS(interleave(base, {Gate::rx(0, 0)}), Error);
}

TEST_CASE("one-qubit variant statistics match the protocol") {
    RandomStream rng = RandomStream::derive(0x1d, rng_domain::kGenerate, 0);
    const int kSequences = 2500;
    long axis_counts[4] = {};
    long clifford_pulses = 0;
    long effective_total = 0;
    long steps_total = 0;
    for (int i = 0; i < kSequences; i++) {
        BenchmarkSequence seq = generate_one_qubit_sequence(10, rng);
        REQUIRE(seq.length == 10);
        for (const StepRecord& step : seq.steps) {
            axis_counts[static_cast<int>(step.pulses[0].axis)]++;
            clifford_pulses += halfpi_pulse_count(step.circuit);
            GateCircuit per_step;
            per_step.push_back(
                Gate::pauli(0, step.pulses[0].axis, step.pulses[0].sign));
            per_step.insert(per_step.end(), step.circuit.begin(), step.circuit.end());
            effective_total += effective_halfpi_pulse_count(per_step);
            steps_total++;
        }
        check_prediction_dense(seq);
    }
    // Four pulse options, each ~1/4 of 25000 steps (5 sigma ~ 342).
    for (int a = 0; a < 4; a++) {
        CHECK(std::abs(axis_counts[a] - steps_total / 4.0) < 350);
    }
    // 4 of 5 Clifford options carry one quarter-turn pulse.
    CHECK(std::abs(clifford_pulses / static_cast<double>(steps_total) - 0.8) < 0.01);
    // Effective quarter-turn pulses per full step: pi pulses count twice.
    CHECK(std::abs(effective_total / static_cast<double>(steps_total) - 1.8) < 0.02);
}

TEST_CASE("generate_set is deterministic and scheduling independent") {
    BenchmarkConfig config;
    config.n_qubits = 2;
    config.lengths = {1, 3, 5};
    config.sequences_per_length = {4, 3, 2};
    config.runs_per_sequence = 100;
    config.final_strategy = FinalStepStrategy::FULL_INVERSE;
    config.master_seed = 0xfeed;
    std::vector<BenchmarkSequence> serial = generate_set(config, 1);
    std::vector<BenchmarkSequence> parallel = generate_set(config, 4);
    REQUIRE(serial.size() == 9);
    REQUIRE(parallel.size() == 9);
    std::vector<int> want_lengths = {1, 1, 1, 1, 3, 3, 3, 5, 5};
    for (size_t i = 0; i < serial.size(); i++) {
        CHECK(serial[i].id == static_cast<int>(i));
        CHECK(serial[i].length == want_lengths[i]);
        CHECK(sequence_signature(serial[i]) == sequence_signature(parallel[i]));
    }
    // Any sequence equals a direct draw from its derived stream.
    RandomStream direct = RandomStream::derive(0xfeed, rng_domain::kGenerate, 5);
    BenchmarkSequence alone = generate_sequence(3, config, direct);
    alone.id = 5;
    CHECK(sequence_signature(alone) == sequence_signature(serial[5]));
}

TEST_CASE("config validation rejects malformed inputs") {
    BenchmarkConfig config;
    config.n_qubits = 2;
    config.lengths = {1, 2, 2};
    config.sequences_per_length = {1, 1, 1};
    CHECK_THROWS_AS(validate_config(config), Error);
    config.lengths = {1, 2, 3};
    config.sequences_per_length = {1, 1};
    CHECK_THROWS_AS(validate_config(config), Error);
    config.sequences_per_length = {1, 1, 0};
    CHECK_THROWS_AS(validate_config(config), Error);
    config.sequences_per_length = {1, 1, 1};
    config.runs_per_sequence = 0;
    CHECK_THROWS_AS(validate_config(config), Error);
    config.runs_per_sequence = 100;
    config.interleaved_gate = GateCircuit{Gate::rx(7, 1)};
    CHECK_THROWS_AS(validate_config(config), Error);
    config.interleaved_gate = GateCircuit{Gate::g(0, 1)};
    validate_config(config);
    config.n_qubits = 0;
    CHECK_THROWS_AS(validate_config(config), Error);
}

TEST_CASE("interleaved configs generate twins inline") {
    BenchmarkConfig config = config_for(2, FinalStepStrategy::FULL_INVERSE, 41);
    config.interleaved_gate = GateCircuit{Gate::g(0, 1)};
    RandomStream rng = RandomStream::derive(41, rng_domain::kGenerate, 0);
    BenchmarkSequence seq = generate_sequence(4, config, rng);
    REQUIRE(seq.interleaved.has_value());
    check_prediction_dense(seq);
    // The same stream without interleaving shares the step draws.
    RandomStream rng2 = RandomStream::derive(41, rng_domain::kGenerate, 0);
    BenchmarkConfig bare = config_for(2, FinalStepStrategy::FULL_INVERSE, 41);
    BenchmarkSequence base = generate_sequence(4, bare, rng2);
    for (size_t s = 0; s < base.steps.size(); s++) {
        CHECK(base.steps[s].cls == seq.steps[s].cls);
    }
    CHECK(sequence_signature(with_interleaved(seq, std::nullopt)) ==
          sequence_signature(base));
}

}  // TEST_SUITE

}  // namespace rbkit
