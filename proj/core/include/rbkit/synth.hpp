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
#include <vector>

#include "rbkit/circuit.hpp"
#include "rbkit/symplectic.hpp"

namespace rbkit {

/// Two-qubit gate charged by a cost metric. One-qubit gates cost zero.
enum class TwoQubitGate : uint8_t { G, CNOT };

/// Exact nonnegative rational, kept reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

Rational make_rational(std::int64_t num, std::int64_t den);

/// One class with a cost-minimal witness circuit realizing it.
struct SynthEntry {
    BinarySymplectic cls;
    int two_qubit_count = 0;
    GateCircuit circuit;
};

/// All 720 two-qubit classes with minimal two-qubit-gate witnesses, built by
/// a breadth-first search over cost layers. Entries follow the canonical
/// enumeration order (row-major lexicographic).
class SynthesisTable2Q {
  public:
    SynthesisTable2Q(TwoQubitGate metric, std::vector<SynthEntry> entries);

    TwoQubitGate metric() const { return metric_; }
    const std::vector<SynthEntry>& entries() const { return entries_; }
    const SynthEntry& lookup(const BinarySymplectic& m) const;

    /// histogram[k] = number of classes needing k two-qubit gates.
    std::vector<int> cost_histogram() const;
    int total_two_qubit_count() const;
    Rational mean_two_qubit_count() const;

  private:
    TwoQubitGate metric_;
    std::vector<SynthEntry> entries_;
    std::vector<int> index_by_key_;
};

/// Builds the table layer by layer: layer 0 holds the 36 local classes,
/// layer k+1 extends layer k by one two-qubit gate and local dressing.
/// Witness ties break on fewest x/y half-pi pulses, then serialized order.
SynthesisTable2Q build_table_2q(TwoQubitGate metric);

/// Shared lazily built table (thread-safe initialization).
const SynthesisTable2Q& shared_table_2q(TwoQubitGate metric);

/// The 6 one-qubit classes in canonical order, each with a minimal witness
/// over quarter-turn rotations (x/y pulses minimized, z rotations free).
const std::vector<SynthEntry>& one_qubit_class_witnesses();

/// Circuit with class(circuit) = m. Table lookup for n <= 2 (G witnesses);
/// generic O(n^2) elimination over locals and CNOT for larger n.
GateCircuit synthesize(const BinarySymplectic& m, int n);

/// Average minimal two-qubit-gate count over all classes, exact.
/// Throws CapacityError for n > 3.
Rational avg_two_qubit_cost(int n, TwoQubitGate metric);

/// Local-equivalence rewrites between the two entangling gates. The output
/// realizes the same unitary up to global phase.
GateCircuit rewrite_cnot_as_g(const GateCircuit& circuit);
GateCircuit rewrite_g_as_cnot(const GateCircuit& circuit);

namespace detail {

/// Exhaustive left-coset BFS behind avg_two_qubit_cost, exposed so the
/// table-derived n = 2 mean can be cross-checked against it.
Rational coset_average_cost(int n, TwoQubitGate metric);

}  // namespace detail

}  // namespace rbkit
