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
#include <optional>
#include <string>
#include <vector>

#include "rbkit/circuit.hpp"
#include "rbkit/clifford.hpp"
#include "rbkit/pauli.hpp"
#include "rbkit/rng.hpp"
#include "rbkit/symplectic.hpp"

namespace rbkit {

/// How the final measurement step is chosen.
///
/// FULL_INVERSE undoes the class of everything before it, so each qubit ends
/// in a definite sigma_z eigenstate. RANDOM_LOGICAL multiplies that inverse
/// by a uniformly random element of the CNOT-generated subgroup (modulo Pauli
/// products), which still maps basis states to basis states. RANDOM_JOINT_Z
/// applies a uniformly random Clifford and then one-qubit rotations chosen so
/// that one random product of sigma_z operators is deterministic.
enum class FinalStepStrategy : uint8_t { FULL_INVERSE, RANDOM_LOGICAL, RANDOM_JOINT_Z };

struct BenchmarkConfig {
    int n_qubits = 2;
    std::vector<int> lengths = {1, 2, 3, 4, 5, 6};
    /// Aligned with `lengths`; how many random sequences to draw per length.
    std::vector<int> sequences_per_length;
    int runs_per_sequence = 100;
    /// Optional gate circuit inserted after every step (paired benchmark).
    std::optional<GateCircuit> interleaved_gate;
    FinalStepStrategy final_strategy = FinalStepStrategy::FULL_INVERSE;
    uint64_t master_seed = 0;
};

/// Throws Error unless lengths are strictly increasing and positive,
/// sequences_per_length aligns with lengths, and counts are positive.
void validate_config(const BenchmarkConfig& config);

/// One randomized step: per-qubit Pauli pulses followed by a uniformly
/// random Clifford class realized as a minimal circuit.
struct StepRecord {
    std::vector<PauliPulse> pulses;
    BinarySymplectic cls = BinarySymplectic(1);
    GateCircuit circuit;
};

/// The final measurement step plus every random draw that shaped it, so the
/// step can be rebuilt after interleaving without consuming new randomness.
struct FinalStepRecord {
    std::vector<PauliPulse> pulses;
    BinarySymplectic cls = BinarySymplectic(1);
    GateCircuit circuit;
    /// RANDOM_LOGICAL: the drawn logical class (block-diagonal in x/z).
    std::optional<BinarySymplectic> logical_cls;
    /// RANDOM_JOINT_Z: the drawn random Clifford class.
    std::optional<BinarySymplectic> random_cls;
    /// RANDOM_JOINT_Z: nonzero GF(2) combination of stabilizer generators.
    uint64_t stabilizer_pick = 0;
    /// RANDOM_JOINT_Z: quarter-turn sign drawn per qubit (+1 or -1).
    std::vector<int> local_signs;
};

/// Predicted error-free measurement result. Basis strategies fill `bits`
/// (character i is qubit i; '0' is the prepared -1 eigenstate of sigma_z).
/// RANDOM_JOINT_Z fills `mask`/`parity`: the measured subset and the
/// deterministic product of per-qubit outcomes (+1 for '1', -1 for '0').
struct OutcomePrediction {
    std::string bits;
    uint64_t mask = 0;
    int parity = 0;

    bool is_parity() const { return parity != 0; }
    bool operator==(const OutcomePrediction&) const = default;
};

struct BenchmarkSequence {
    int id = 0;
    int n_qubits = 1;
    int length = 0;
    FinalStepStrategy strategy = FinalStepStrategy::FULL_INVERSE;
    std::vector<StepRecord> steps;
    /// Gate circuit inserted after every step, if this is an interleaved twin.
    std::optional<GateCircuit> interleaved;
    FinalStepRecord final_step;
    OutcomePrediction prediction;
};

/// Simulation outcome for one sequence.
struct RunRecord {
    int sequence_id = 0;
    int length = 0;
    int runs = 0;
    int successes = 0;
};

/// Draws one randomized step: per qubit a Pauli pulse uniform over the 8
/// axis/sign options (identity included), then a uniform Clifford class.
StepRecord generate_step(int n, RandomStream& rng);

/// Generates a full sequence of `l` steps plus the final measurement step
/// for config.final_strategy, consuming randomness in a fixed order.
BenchmarkSequence generate_sequence(int l, const BenchmarkConfig& config, RandomStream& rng);

/// Returns the interleaved twin: `gate` inserted after every step, final
/// step rebuilt from the recorded randomness, prediction recomputed.
BenchmarkSequence interleave(const BenchmarkSequence& seq, const GateCircuit& gate);

/// Rebuilds the final step and prediction of `seq` with the interleaved
/// circuit replaced by `gate` (nullopt strips interleaving).
BenchmarkSequence with_interleaved(const BenchmarkSequence& seq,
                                   const std::optional<GateCircuit>& gate);

/// One-qubit protocol variant: Pauli step uniform over 4 options (x, y, z
/// pi rotations or identity), Clifford step uniform over 5 options (Rx or
/// Ry quarter turns of either sign, or identity), final step inverts.
BenchmarkSequence generate_one_qubit_sequence(int l, RandomStream& rng);

/// All sequences for a config: ids are assigned in (length, replicate)
/// order and each sequence uses a stream derived from its id, so parallel
/// generation cannot change the output.
std::vector<BenchmarkSequence> generate_set(const BenchmarkConfig& config, int jobs = 1);

/// Signed tableau of the entire sequence: steps with their pulses, any
/// interleaved circuits, then the final step.
CliffordElement sequence_tableau(const BenchmarkSequence& seq);

/// Recomputes the prediction from the sequence content (tableau
/// propagation). Throws Error if the sequence is not deterministic.
OutcomePrediction predict_outcome(const BenchmarkSequence& seq);

}  // namespace rbkit
