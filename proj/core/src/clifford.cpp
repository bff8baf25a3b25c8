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

#include "rbkit/clifford.hpp"

#include "rbkit/error.hpp"

namespace rbkit {

namespace {

// Local conjugation image as (x, z, i-power) of the X^x Z^z normal form.
struct LocalImage {
    bool x;
    bool z;
    uint8_t phase;
};

// Images of X and Z on the gate qubit under one quarter turn table.
// Index is turns mod 4.
struct RotationTable {
    LocalImage img_x[4];
    LocalImage img_z[4];
};

// R_x: t=1 sends Z -> -Y (-Y = i^3 XZ), Y -> Z.
constexpr RotationTable kRxTable = {
    {{true, false, 0}, {true, false, 0}, {true, false, 0}, {true, false, 0}},
    {{false, true, 0}, {true, true, 3}, {false, true, 2}, {true, true, 1}},
};
// R_y: t=1 sends X -> -Z, Z -> X.
constexpr RotationTable kRyTable = {
    {{true, false, 0}, {false, true, 2}, {true, false, 2}, {false, true, 0}},
    {{false, true, 0}, {true, false, 0}, {false, true, 2}, {true, false, 2}},
};
// R_z: t=1 sends X -> Y, Y -> -X.
constexpr RotationTable kRzTable = {
    {{true, false, 0}, {true, true, 1}, {true, false, 2}, {true, true, 3}},
    {{false, true, 0}, {false, true, 0}, {false, true, 0}, {false, true, 0}},
};

PauliOperator embed_local(int n, int q, LocalImage img) {
    BitRow x{}, z{};
    x.set(q, img.x);
    z.set(q, img.z);
    return PauliOperator::from_bits(n, x, z, img.phase);
}

// Multiplies `out` by the image of the local factor X^x Z^z at qubit q.
void apply_rotation(const RotationTable& table, int turns, int q, const PauliOperator& p,
                    PauliOperator& out) {
    int t = ((turns % 4) + 4) % 4;
    if (p.x_bit(q)) {
        out = out * embed_local(p.n(), q, table.img_x[t]);
    }
    if (p.z_bit(q)) {
        out = out * embed_local(p.n(), q, table.img_z[t]);
    }
}

}  // namespace

CliffordElement::CliffordElement(int n) : n_(n) {
    if (n < 1 || n > 64) {
        throw CapacityError("qubit count must be in [1, 64]");
    }
    images_.reserve(2 * n);
    for (int q = 0; q < n; q++) {
        images_.push_back(PauliOperator::single(n, q, Axis::X));
    }
    for (int q = 0; q < n; q++) {
        images_.push_back(PauliOperator::single(n, q, Axis::Z));
    }
}

void CliffordElement::set_image(int idx, const PauliOperator& p) {
    if (p.n() != n_) {
        throw DimensionError("image size differs from tableau size");
    }
    if (!p.is_hermitian()) {
        throw Error("tableau images must be Hermitian signed Paulis");
    }
    images_[idx] = p;
}

PauliOperator CliffordElement::conjugate(const PauliOperator& p) const {
    if (p.n() != n_) {
        throw DimensionError("Pauli size differs from tableau size");
    }
    PauliOperator out = PauliOperator::from_bits(n_, {}, {}, p.phase_exp());
    for (int q = 0; q < n_; q++) {
        if (p.x_bit(q)) {
            out = out * images_[q];
        }
        if (p.z_bit(q)) {
            out = out * images_[n_ + q];
        }
    }
    return out;
}

bool CliffordElement::is_identity() const {
    return *this == CliffordElement(n_);
}

CliffordElement compose(const CliffordElement& first, const CliffordElement& second) {
    if (first.n() != second.n()) {
        throw DimensionError("tableau sizes differ");
    }
    CliffordElement out(first.n());
    for (int i = 0; i < 2 * first.n(); i++) {
        out.set_image(i, second.conjugate(first.image(i)));
    }
    return out;
}

CliffordElement clifford_inverse(const CliffordElement& c) {
    int n = c.n();
    BinarySymplectic minv = symplectic_inv(clifford_class(c));
    CliffordElement out(n);
    for (int i = 0; i < 2 * n; i++) {
        BitRow row = minv.row(i);
        PauliOperator q = PauliOperator::from_bits_hermitian(n, row.truncated(n), row.shr(n), 1);
        // U q U^dag must be the generator up to sign; flip q to make it exact.
        PauliOperator forward = c.conjugate(q);
        Axis want = i < n ? Axis::X : Axis::Z;
        PauliOperator gen = PauliOperator::single(n, i % n, want);
        if (forward.x_bits() != gen.x_bits() || forward.z_bits() != gen.z_bits()) {
            throw Error("inverse: symplectic quotient is inconsistent");
        }
        if (forward.sign() < 0) {
            q = PauliOperator::from_bits_hermitian(n, row.truncated(n), row.shr(n), -1);
        }
        out.set_image(i, q);
    }
    return out;
}

BinarySymplectic clifford_class(const CliffordElement& c) {
    BinarySymplectic m = BinarySymplectic::zero(c.n());
    for (int i = 0; i < 2 * c.n(); i++) {
        m.row(i) = c.image(i).class_row();
    }
    return m;
}

PauliOperator conjugate_by_gate(const Gate& g, const PauliOperator& p) {
    int n = p.n();
    if (g.kind == GateKind::ID || (g.kind == GateKind::PAULI && g.axis == Axis::I)) {
        return p;
    }
    if (g.kind == GateKind::PAULI) {
        // exp(+-i sigma pi/2) conjugation is sigma P sigma up to global phase.
        PauliOperator axis_op = PauliOperator::single(n, g.q0, g.axis);
        if (p.commutes_with(axis_op)) {
            return p;
        }
        return PauliOperator::from_bits(n, p.x_bits(), p.z_bits(),
                                        static_cast<uint8_t>(p.phase_exp() + 2));
    }
    // Factor P = i^phase * prod_q X_q^{x_q} Z_q^{z_q} (ascending q, X before Z),
    // keep the untouched factors, and multiply in the gate-qubit images. The
    // untouched part commutes with the images, so ordering stays canonical.
    BitRow x = p.x_bits();
    BitRow z = p.z_bits();
    int lo = g.q0;
    int hi = g.q0;
    if (g.is_two_qubit()) {
        lo = g.q0 < g.q1 ? g.q0 : g.q1;
        hi = g.q0 < g.q1 ? g.q1 : g.q0;
        x.set(hi, false);
        z.set(hi, false);
    }
    x.set(lo, false);
    z.set(lo, false);
    PauliOperator out = PauliOperator::from_bits(n, x, z, p.phase_exp());
    switch (g.kind) {
        case GateKind::RX:
            apply_rotation(kRxTable, g.turns, g.q0, p, out);
            return out;
        case GateKind::RY:
            apply_rotation(kRyTable, g.turns, g.q0, p, out);
            return out;
        case GateKind::RZ:
            apply_rotation(kRzTable, g.turns, g.q0, p, out);
            return out;
        case GateKind::G: {
            // X_a -> +Y_a Z_b, X_b -> +Z_a Y_b, Z images unchanged.
            auto x_image = [&](int q) {
                BitRow ix{}, iz{};
                ix.set(q, true);
                iz.set(q, true);
                iz.set(q == g.q0 ? g.q1 : g.q0, true);
                return PauliOperator::from_bits(n, ix, iz, 1);
            };
            for (int q : {lo, hi}) {
                if (p.x_bit(q)) {
                    out = out * x_image(q);
                }
                if (p.z_bit(q)) {
                    out = out * PauliOperator::single(n, q, Axis::Z);
                }
            }
            return out;
        }
        case GateKind::CNOT: {
            // X_c -> X_c X_t, Z_t -> Z_c Z_t, the other generators are fixed.
            for (int q : {lo, hi}) {
                if (p.x_bit(q)) {
                    BitRow ix{}, iz{};
                    ix.set(q, true);
                    if (q == g.q0) {
                        ix.set(g.q1, true);
                    }
                    out = out * PauliOperator::from_bits(n, ix, iz, 0);
                }
                if (p.z_bit(q)) {
                    BitRow ix{}, iz{};
                    iz.set(q, true);
                    if (q == g.q1) {
                        iz.set(g.q0, true);
                    }
                    out = out * PauliOperator::from_bits(n, ix, iz, 0);
                }
            }
            return out;
        }
        default:
            throw Error("invalid gate kind");
    }
}

void conjugate_bits_by_gate(const Gate& g, BitRow& x, BitRow& z) {
    switch (g.kind) {
        case GateKind::ID:
        case GateKind::PAULI:
            return;
        case GateKind::RX:
            if (g.turns & 1) {
                x.set(g.q0, x.get(g.q0) != z.get(g.q0));
            }
            return;
        case GateKind::RY:
            if (g.turns & 1) {
                bool xv = x.get(g.q0);
                x.set(g.q0, z.get(g.q0));
                z.set(g.q0, xv);
            }
            return;
        case GateKind::RZ:
            if (g.turns & 1) {
                z.set(g.q0, z.get(g.q0) != x.get(g.q0));
            }
            return;
        case GateKind::G: {
            bool flip = x.get(g.q0) != x.get(g.q1);
            if (flip) {
                z.flip(g.q0);
                z.flip(g.q1);
            }
            return;
        }
        case GateKind::CNOT: {
            x.set(g.q1, x.get(g.q1) != x.get(g.q0));
            z.set(g.q0, z.get(g.q0) != z.get(g.q1));
            return;
        }
    }
}

CliffordElement clifford_from_circuit(const GateCircuit& circuit, int n) {
    validate_circuit(circuit, n);
    CliffordElement out(n);
    for (const Gate& g : circuit) {
        for (int i = 0; i < 2 * n; i++) {
            out.set_image(i, conjugate_by_gate(g, out.image(i)));
        }
    }
    return out;
}

BinarySymplectic circuit_class(const GateCircuit& circuit, int n) {
    return clifford_class(clifford_from_circuit(circuit, n));
}

}  // namespace rbkit
