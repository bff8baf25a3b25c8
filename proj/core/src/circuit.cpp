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

#include "rbkit/circuit.hpp"

#include <cstdlib>

#include "rbkit/error.hpp"

namespace rbkit {

Gate Gate::g(int a, int b) {
    if (a > b) {
        std::swap(a, b);
    }
    return {GateKind::G, a, b, 0, Axis::I, 1};
}

void validate_circuit(const GateCircuit& circuit, int n) {
    for (const Gate& g : circuit) {
        if (g.q0 < 0 || g.q0 >= n) {
            throw DimensionError("gate qubit out of range");
        }
        if (g.is_two_qubit()) {
            if (g.q1 < 0 || g.q1 >= n || g.q1 == g.q0) {
                throw DimensionError("two-qubit gate needs two distinct qubits in range");
            }
        }
        switch (g.kind) {
            case GateKind::RX:
            case GateKind::RY:
            case GateKind::RZ:
                if (g.turns == 0) {
                    throw Error("rotation gate with zero turns");
                }
                break;
            case GateKind::PAULI:
                if (g.sign != 1 && g.sign != -1) {
                    throw Error("PAULI sign must be +1 or -1");
                }
                break;
            default:
                break;
        }
    }
}

std::string serialize_gate(const Gate& g) {
    auto qubit = [](int q) { return std::to_string(q); };
    auto turns = [](int t) { return (t > 0 ? "+" : "") + std::to_string(t); };
    switch (g.kind) {
        case GateKind::RX:
            return "RX" + qubit(g.q0) + "," + turns(g.turns);
        case GateKind::RY:
            return "RY" + qubit(g.q0) + "," + turns(g.turns);
        case GateKind::RZ:
            return "RZ" + qubit(g.q0) + "," + turns(g.turns);
        case GateKind::PAULI:
            return std::string("P") + qubit(g.q0) + "," + axis_char(g.axis) + "," +
                   (g.sign < 0 ? "-" : "+");
        case GateKind::ID:
            return "I" + qubit(g.q0);
        case GateKind::G:
            return "G" + qubit(g.q0) + "," + qubit(g.q1);
        case GateKind::CNOT:
            return "C" + qubit(g.q0) + "," + qubit(g.q1);
    }
    throw Error("invalid gate kind");
}

std::string serialize_circuit(const GateCircuit& circuit) {
    std::string out;
    for (size_t i = 0; i < circuit.size(); i++) {
        if (i) {
            out += ';';
        }
        out += serialize_gate(circuit[i]);
    }
    return out;
}

int halfpi_pulse_count(const GateCircuit& circuit) {
    int count = 0;
    for (const Gate& g : circuit) {
        if (g.kind == GateKind::RX || g.kind == GateKind::RY) {
            count += std::abs(g.turns);
        }
    }
    return count;
}

int effective_halfpi_pulse_count(const GateCircuit& circuit) {
    int count = 0;
    for (const Gate& g : circuit) {
        switch (g.kind) {
            case GateKind::RX:
            case GateKind::RY:
                count += std::abs(g.turns);
                break;
            case GateKind::PAULI:
                if (g.axis == Axis::X || g.axis == Axis::Y) {
                    count += 2;
                }
                break;
            default:
                break;
        }
    }
    return count;
}

GateCircuit circuit_inverse(const GateCircuit& circuit) {
    GateCircuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        const Gate& g = *it;
        switch (g.kind) {
            case GateKind::RX:
            case GateKind::RY:
            case GateKind::RZ: {
                Gate inv = g;
                inv.turns = -g.turns;
                out.push_back(inv);
                break;
            }
            case GateKind::PAULI: {
                Gate inv = g;
                inv.sign = -g.sign;
                out.push_back(inv);
                break;
            }
            case GateKind::ID:
                out.push_back(g);
                break;
            case GateKind::G:
                out.push_back(Gate::pauli(g.q0, Axis::Z, 1));
                out.push_back(Gate::pauli(g.q1, Axis::Z, 1));
                out.push_back(g);
                break;
            case GateKind::CNOT:
                out.push_back(g);
                break;
        }
    }
    return out;
}

}  // namespace rbkit
