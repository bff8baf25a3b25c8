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

#include <string>
#include <vector>

#include "rbkit/pauli.hpp"

namespace rbkit {

enum class GateKind : uint8_t { RX, RY, RZ, PAULI, ID, G, CNOT };

/// One native operation. Rotations R_u(theta) follow the convention
/// R_u(theta) = exp(-i * theta * sigma_u / 2); `turns` counts signed quarter
/// turns, so turns = +1 is R_u(+pi/2). PAULI is the pulse
/// exp(sign * i * (pi/2) * sigma_axis). G = diag(1, i, i, 1). CNOT has
/// control q0 and target q1.
struct Gate {
    GateKind kind = GateKind::ID;
    int q0 = 0;
    int q1 = -1;
    int turns = 0;
    Axis axis = Axis::I;
    int sign = 1;

    static Gate rx(int q, int turns) { return {GateKind::RX, q, -1, turns, Axis::I, 1}; }
    static Gate ry(int q, int turns) { return {GateKind::RY, q, -1, turns, Axis::I, 1}; }
    static Gate rz(int q, int turns) { return {GateKind::RZ, q, -1, turns, Axis::I, 1}; }
    static Gate pauli(int q, Axis a, int sign) { return {GateKind::PAULI, q, -1, 0, a, sign}; }
    static Gate id(int q) { return {GateKind::ID, q, -1, 0, Axis::I, 1}; }
    static Gate g(int a, int b);  // canonicalized with q0 < q1
    static Gate cnot(int control, int target) {
        return {GateKind::CNOT, control, target, 0, Axis::I, 1};
    }

    bool is_two_qubit() const { return kind == GateKind::G || kind == GateKind::CNOT; }

    bool operator==(const Gate&) const = default;
};

using GateCircuit = std::vector<Gate>;

/// Throws if a gate touches a qubit outside [0, n) or is malformed.
void validate_circuit(const GateCircuit& circuit, int n);

/// Canonical compact text form, e.g. "RX0,1;G0,1;P1,X,-". Used for
/// deterministic lexicographic tie-breaking and debugging.
std::string serialize_gate(const Gate& g);
std::string serialize_circuit(const GateCircuit& circuit);

/// Number of pi/2 pulses about x or y: sum of |turns| over RX and RY gates.
/// z rotations, identities and PAULI records do not count.
int halfpi_pulse_count(const GateCircuit& circuit);

/// Effective pi/2 pulse count for error-per-pulse accounting: RX/RY count
/// |turns|, an x/y PAULI (a pi pulse) counts 2, z rotations and identity 0.
int effective_halfpi_pulse_count(const GateCircuit& circuit);

/// Gate-by-gate inverse in reverse order. The inverse of G is expanded as
/// Z (x) Z followed by G, since G^-1 = G^3 and G^2 = Z (x) Z.
GateCircuit circuit_inverse(const GateCircuit& circuit);

}  // namespace rbkit
