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

#include "rbkit/synth.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "rbkit/clifford.hpp"
#include "rbkit/error.hpp"

namespace rbkit {

namespace {

// (x/y half-pi pulse count, serialized text) is the witness preference order.
bool witness_better(const GateCircuit& a, const GateCircuit& b) {
    int pa = halfpi_pulse_count(a);
    int pb = halfpi_pulse_count(b);
    if (pa != pb) {
        return pa < pb;
    }
    return serialize_circuit(a) < serialize_circuit(b);
}

Gate remap_to_qubit(Gate g, int q) {
    g.q0 = q;
    return g;
}

GateCircuit concat(GateCircuit a, const GateCircuit& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// The 6 invertible 2x2 matrices over GF(2) as (a, b, c, d) row pairs.
constexpr std::array<std::array<int, 4>, 6> kGl2 = {{
    {1, 0, 0, 1},
    {0, 1, 1, 0},
    {1, 1, 0, 1},
    {1, 0, 1, 1},
    {0, 1, 1, 1},
    {1, 1, 1, 0},
}};

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den <= 0 || num < 0) {
        throw Error("rational must be nonnegative with positive denominator");
    }
    if (num == 0) {
        return {0, 1};
    }
    std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

const std::vector<SynthEntry>& one_qubit_class_witnesses() {
    static const std::vector<SynthEntry> kTable = [] {
        const std::array<Gate, 6> gens = {Gate::rx(0, 1),  Gate::rx(0, -1), Gate::ry(0, 1),
                                          Gate::ry(0, -1), Gate::rz(0, 1),  Gate::rz(0, -1)};
        std::map<uint64_t, GateCircuit> best;
        auto consider = [&](const GateCircuit& c) {
            uint64_t key = circuit_class(c, 1).packed_key();
            auto it = best.find(key);
            if (it == best.end() || witness_better(c, it->second)) {
                best[key] = c;
            }
        };
        // Words of length <= 3 over the quarter-turn generators cover all 6
        // classes; length 2 already suffices, 3 adds cheaper-pulse witnesses.
        consider({});
        for (const Gate& g1 : gens) {
            consider({g1});
            for (const Gate& g2 : gens) {
                consider({g1, g2});
                for (const Gate& g3 : gens) {
                    consider({g1, g2, g3});
                }
            }
        }
        if (best.size() != 6) {
            throw Error("one-qubit class search did not find 6 classes");
        }
        std::vector<SynthEntry> out;
        for (const BinarySymplectic& m : enumerate_symplectic(1)) {
            const GateCircuit& c = best.at(m.packed_key());
            out.push_back({m, 0, c});
        }
        return out;
    }();
    return kTable;
}

SynthesisTable2Q::SynthesisTable2Q(TwoQubitGate metric, std::vector<SynthEntry> entries)
    : metric_(metric), entries_(std::move(entries)), index_by_key_(1u << 16, -1) {
    if (entries_.size() != 720) {
        throw Error("two-qubit table must hold 720 classes");
    }
    for (size_t i = 0; i < entries_.size(); i++) {
        index_by_key_[entries_[i].cls.packed_key()] = static_cast<int>(i);
    }
}

const SynthEntry& SynthesisTable2Q::lookup(const BinarySymplectic& m) const {
    if (m.n() != 2) {
        throw DimensionError("table lookup requires a 4x4 matrix");
    }
    int idx = index_by_key_[m.packed_key()];
    if (idx < 0) {
        throw Error("matrix is not in the symplectic group");
    }
    return entries_[static_cast<size_t>(idx)];
}

std::vector<int> SynthesisTable2Q::cost_histogram() const {
    std::vector<int> h;
    for (const SynthEntry& e : entries_) {
        if (e.two_qubit_count >= static_cast<int>(h.size())) {
            h.resize(static_cast<size_t>(e.two_qubit_count) + 1, 0);
        }
        h[static_cast<size_t>(e.two_qubit_count)]++;
    }
    return h;
}

int SynthesisTable2Q::total_two_qubit_count() const {
    int total = 0;
    for (const SynthEntry& e : entries_) {
        total += e.two_qubit_count;
    }
    return total;
}

Rational SynthesisTable2Q::mean_two_qubit_count() const {
    return make_rational(total_two_qubit_count(), static_cast<std::int64_t>(entries_.size()));
}

SynthesisTable2Q build_table_2q(TwoQubitGate metric) {
    const std::vector<SynthEntry>& w1 = one_qubit_class_witnesses();

    struct Local {
        GateCircuit circuit;
        BinarySymplectic cls;
    };
    std::vector<Local> locals;
    locals.reserve(36);
    for (const SynthEntry& a : w1) {
        for (const SynthEntry& b : w1) {
            GateCircuit c = a.circuit;
            for (const Gate& g : b.circuit) {
                c.push_back(remap_to_qubit(g, 1));
            }
            locals.push_back({c, circuit_class(c, 2)});
        }
    }

    std::vector<Gate> entanglers;
    if (metric == TwoQubitGate::G) {
        entanglers = {Gate::g(0, 1)};
    } else {
        entanglers = {Gate::cnot(0, 1), Gate::cnot(1, 0)};
    }
    std::vector<BinarySymplectic> entangler_cls;
    for (const Gate& e : entanglers) {
        entangler_cls.push_back(circuit_class({e}, 2));
    }

    struct Found {
        int cost;
        BinarySymplectic cls;
        GateCircuit circuit;
    };
    std::map<uint64_t, Found> found;
    std::map<uint64_t, Found> layer;
    for (const Local& lc : locals) {
        uint64_t key = lc.cls.packed_key();
        auto it = layer.find(key);
        if (it == layer.end() || witness_better(lc.circuit, it->second.circuit)) {
            layer.insert_or_assign(key, Found{0, lc.cls, lc.circuit});
        }
    }
    found = layer;

    int cost = 0;
    while (found.size() < 720) {
        cost++;
        if (cost > 16) {
            throw Error("two-qubit table search failed to close the group");
        }
        std::map<uint64_t, Found> next;
        for (const auto& [key, prev] : layer) {
            for (size_t ei = 0; ei < entanglers.size(); ei++) {
                BinarySymplectic after_e = symplectic_mul(prev.cls, entangler_cls[ei]);
                for (const Local& lc : locals) {
                    BinarySymplectic cls = symplectic_mul(after_e, lc.cls);
                    uint64_t k = cls.packed_key();
                    if (found.count(k)) {
                        continue;
                    }
                    GateCircuit cand = prev.circuit;
                    cand.push_back(entanglers[ei]);
                    cand = concat(std::move(cand), lc.circuit);
                    auto it = next.find(k);
                    if (it == next.end() || witness_better(cand, it->second.circuit)) {
                        next.insert_or_assign(k, Found{cost, cls, std::move(cand)});
                    }
                }
            }
        }
        if (next.empty()) {
            throw Error("two-qubit table search stalled before closing the group");
        }
        found.insert(next.begin(), next.end());
        layer = std::move(next);
    }

    std::vector<SynthEntry> entries;
    entries.reserve(720);
    for (const auto& [key, f] : found) {
        entries.push_back({f.cls, f.cost, f.circuit});
    }
    return SynthesisTable2Q(metric, std::move(entries));
}

const SynthesisTable2Q& shared_table_2q(TwoQubitGate metric) {
    if (metric == TwoQubitGate::G) {
        static const SynthesisTable2Q kTable = build_table_2q(TwoQubitGate::G);
        return kTable;
    }
    static const SynthesisTable2Q kTable = build_table_2q(TwoQubitGate::CNOT);
    return kTable;
}

namespace {

// Reduces m to the identity by right-multiplying with elementary gate
// classes, which acts on every row through the gate's bit action. The
// reducing word then inverts into a witness circuit for m.
GateCircuit synthesize_by_elimination(const BinarySymplectic& m) {
    int n = m.n();
    BinarySymplectic r = m;
    GateCircuit forward;
    auto apply = [&](const Gate& g) {
        for (int i = 0; i < 2 * n; i++) {
            BitRow row = r.row(i);
            BitRow x = row.truncated(n);
            BitRow z = row.shr(n);
            conjugate_bits_by_gate(g, x, z);
            r.row(i) = x ^ z.shl(n);
        }
        forward.push_back(g);
    };
    for (int k = 0; k < n; k++) {
        // Row k is the X_k image, row n+k the Z_k image. Both live on
        // qubits >= k once the earlier pairs are unit rows.
        bool has_x = false;
        for (int q = k; q < n; q++) {
            has_x = has_x || r.get(k, q);
        }
        if (!has_x) {
            for (int q = k; q < n; q++) {
                if (r.get(k, n + q)) {
                    apply(Gate::ry(q, 1));
                    break;
                }
            }
        }
        if (!r.get(k, k)) {
            for (int q = k + 1; q < n; q++) {
                if (r.get(k, q)) {
                    apply(Gate::cnot(q, k));
                    break;
                }
            }
        }
        for (int q = k + 1; q < n; q++) {
            if (r.get(k, q)) {
                apply(Gate::cnot(k, q));
            }
        }
        for (int q = k + 1; q < n; q++) {
            if (r.get(k, n + q)) {
                apply(Gate::ry(q, 1));
                apply(Gate::cnot(k, q));
            }
        }
        if (r.get(k, n + k)) {
            apply(Gate::rz(k, 1));
        }
        // Now the X_k row is exact; the Z_k row has z_k = 1 by the
        // symplectic pairing. Make its other letters pure Z, then fan in.
        for (int q = k + 1; q < n; q++) {
            if (r.get(n + k, q)) {
                apply(r.get(n + k, n + q) ? Gate::rx(q, 1) : Gate::ry(q, 1));
            }
        }
        if (r.get(n + k, k)) {
            apply(Gate::rx(k, 1));
        }
        for (int q = k + 1; q < n; q++) {
            if (r.get(n + k, n + q)) {
                apply(Gate::cnot(q, k));
            }
        }
    }
    if (!(r == BinarySymplectic(n))) {
        throw Error("elimination failed; matrix is not symplectic");
    }
    GateCircuit out;
    out.reserve(forward.size());
    for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::RX || g.kind == GateKind::RY || g.kind == GateKind::RZ) {
            g.turns = -g.turns;
        }
        out.push_back(g);
    }
    return out;
}

}  // namespace

GateCircuit synthesize(const BinarySymplectic& m, int n) {
    if (m.n() != n) {
        throw DimensionError("matrix size does not match the qubit count");
    }
    if (!is_symplectic(m)) {
        throw Error("matrix is not symplectic");
    }
    if (n == 1) {
        uint64_t key = m.packed_key();
        for (const SynthEntry& e : one_qubit_class_witnesses()) {
            if (e.cls.packed_key() == key) {
                return e.circuit;
            }
        }
        throw Error("one-qubit class not found");
    }
    if (n == 2) {
        return shared_table_2q(TwoQubitGate::G).lookup(m).circuit;
    }
    return synthesize_by_elimination(m);
}

namespace detail {

// Exhaustive cost BFS contracted by the local subgroup: left cosets of the
// 6^n local classes share one cost, so 720 classes shrink to 20 cosets and
// 1 451 520 to 6720. States are canonicalized by per-qubit row-pair
// minimization over GL(2,2) and packed into one word.
Rational coset_average_cost(int n, TwoQubitGate metric) {
    const int d = 2 * n;
    using State = std::array<uint8_t, 6>;

    auto pack = [d](const State& s) {
        uint64_t key = 0;
        for (int i = 0; i < d; i++) {
            key |= static_cast<uint64_t>(s[static_cast<size_t>(i)]) << (i * d);
        }
        return key;
    };
    auto canon = [n](State s) {
        for (int q = 0; q < n; q++) {
            uint8_t r1 = s[static_cast<size_t>(q)];
            uint8_t r2 = s[static_cast<size_t>(n + q)];
            uint8_t best1 = r1, best2 = r2;
            for (const auto& t : kGl2) {
                uint8_t c1 = static_cast<uint8_t>((t[0] ? r1 : 0) ^ (t[1] ? r2 : 0));
                uint8_t c2 = static_cast<uint8_t>((t[2] ? r1 : 0) ^ (t[3] ? r2 : 0));
                if (c1 < best1 || (c1 == best1 && c2 < best2)) {
                    best1 = c1;
                    best2 = c2;
                }
            }
            s[static_cast<size_t>(q)] = best1;
            s[static_cast<size_t>(n + q)] = best2;
        }
        return s;
    };

    // Entangler actions on a packed row (x bits 0..n-1, z bits n..2n-1).
    struct Ent {
        int a, b;
        bool is_g;
    };
    std::vector<Ent> ents;
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            if (a == b) {
                continue;
            }
            if (metric == TwoQubitGate::G) {
                if (a < b) {
                    ents.push_back({a, b, true});
                }
            } else {
                ents.push_back({a, b, false});
            }
        }
    }
    auto apply_ent = [n](const Ent& e, State& s) {
        for (auto& row : s) {
            bool xa = (row >> e.a) & 1;
            bool xb = (row >> e.b) & 1;
            bool za = (row >> (n + e.a)) & 1;
            bool zb = (row >> (n + e.b)) & 1;
            if (e.is_g) {
                if (xa != xb) {
                    za = !za;
                    zb = !zb;
                }
            } else {
                xb = xb != xa;
                za = za != zb;
            }
            row = static_cast<uint8_t>((row & ~((1u << e.a) | (1u << e.b) | (1u << (n + e.a)) |
                                                (1u << (n + e.b)))) |
                                       (static_cast<unsigned>(xa) << e.a) |
                                       (static_cast<unsigned>(xb) << e.b) |
                                       (static_cast<unsigned>(za) << (n + e.a)) |
                                       (static_cast<unsigned>(zb) << (n + e.b)));
        }
    };

    // Right-multiplication by a per-qubit local block mixes the x/z column
    // pair of that qubit in every row.
    auto apply_local = [n](const std::array<int, 4>& t, int q, State& s) {
        for (auto& row : s) {
            bool x = (row >> q) & 1;
            bool z = (row >> (n + q)) & 1;
            bool nx = (t[0] && x) != (t[2] && z);
            bool nz = (t[1] && x) != (t[3] && z);
            row = static_cast<uint8_t>((row & ~((1u << q) | (1u << (n + q)))) |
                                       (static_cast<unsigned>(nx) << q) |
                                       (static_cast<unsigned>(nz) << (n + q)));
        }
    };

    State ident{};
    for (int i = 0; i < d; i++) {
        ident[static_cast<size_t>(i)] = static_cast<uint8_t>(1u << i);
    }

    std::unordered_map<uint64_t, int> cost;
    std::deque<State> queue;
    State start = canon(ident);
    cost[pack(start)] = 0;
    queue.push_back(start);

    int local_count = 1;
    for (int q = 0; q < n; q++) {
        local_count *= 6;
    }

    // Enumerates local combinations by mixed-radix digits over kGl2.
    while (!queue.empty()) {
        State cur = queue.front();
        queue.pop_front();
        int cur_cost = cost.at(pack(cur));
        for (const Ent& e : ents) {
            State after_e = cur;
            apply_ent(e, after_e);
            for (int mix = 0; mix < local_count; mix++) {
                State s = after_e;
                int digits = mix;
                for (int q = 0; q < n; q++) {
                    int idx = digits % 6;
                    digits /= 6;
                    if (idx != 0) {
                        apply_local(kGl2[static_cast<size_t>(idx)], q, s);
                    }
                }
                State cs = canon(s);
                uint64_t key = pack(cs);
                if (cost.emplace(key, cur_cost + 1).second) {
                    queue.push_back(cs);
                }
            }
        }
    }

    std::int64_t coset_count = static_cast<std::int64_t>(cost.size());
    if (coset_count * local_count != static_cast<std::int64_t>(symplectic_group_order(n))) {
        throw Error("coset search did not cover the symplectic group");
    }
    std::int64_t total = 0;
    for (const auto& [key, c] : cost) {
        total += c;
    }
    return make_rational(total, coset_count);
}

}  // namespace detail

Rational avg_two_qubit_cost(int n, TwoQubitGate metric) {
    if (n < 1 || n > 3) {
        throw CapacityError("exact cost averages are exhaustive and capped at n = 3");
    }
    if (n == 1) {
        return {0, 1};
    }
    if (n == 2) {
        return shared_table_2q(metric).mean_two_qubit_count();
    }
    return detail::coset_average_cost(3, metric);
}

GateCircuit rewrite_cnot_as_g(const GateCircuit& circuit) {
    GateCircuit out;
    for (const Gate& g : circuit) {
        if (g.kind != GateKind::CNOT) {
            out.push_back(g);
            continue;
        }
        int c = g.q0;
        int t = g.q1;
        // CNOT = H_t CZ H_t and CZ = (Sdag x Sdag) G, with H = Ry(1) Rz(2)
        // and S = Rz(1) up to global phase.
        out.push_back(Gate::rz(t, 2));
        out.push_back(Gate::ry(t, 1));
        out.push_back(Gate::g(c, t));
        out.push_back(Gate::rz(c, -1));
        out.push_back(Gate::rz(t, 1));
        out.push_back(Gate::ry(t, 1));
    }
    return out;
}

GateCircuit rewrite_g_as_cnot(const GateCircuit& circuit) {
    GateCircuit out;
    for (const Gate& g : circuit) {
        if (g.kind != GateKind::G) {
            out.push_back(g);
            continue;
        }
        int a = g.q0;
        int b = g.q1;
        // G = (S x S) CZ with CZ = H_b CNOT(a,b) H_b.
        out.push_back(Gate::rz(b, 2));
        out.push_back(Gate::ry(b, 1));
        out.push_back(Gate::cnot(a, b));
        out.push_back(Gate::rz(b, 2));
        out.push_back(Gate::ry(b, 1));
        out.push_back(Gate::rz(a, 1));
        out.push_back(Gate::rz(b, 1));
    }
    return out;
}

}  // namespace rbkit
