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

#include <vector>

#include "rbkit/circuit.hpp"
#include "rbkit/pauli.hpp"
#include "rbkit/symplectic.hpp"

namespace rbkit {

/// Clifford unitary modulo global phase, stored as the signed conjugation
/// images U X_q U^dag and U Z_q U^dag. Images are Hermitian Pauli products,
/// so composition and inversion track signs exactly.
class CliffordElement {
  public:
    explicit CliffordElement(int n);

    static CliffordElement identity(int n) { return CliffordElement(n); }

    int n() const { return n_; }
    const PauliOperator& image_x(int q) const { return images_[q]; }
    const PauliOperator& image_z(int q) const { return images_[n_ + q]; }
    /// Generator index: 0..n-1 are X images, n..2n-1 are Z images.
    const PauliOperator& image(int idx) const { return images_[idx]; }
    void set_image(int idx, const PauliOperator& p);

    /// U P U^dag with exact sign tracking.
    PauliOperator conjugate(const PauliOperator& p) const;

    bool is_identity() const;

    bool operator==(const CliffordElement&) const = default;

  private:
    int n_;
    std::vector<PauliOperator> images_;
};

/// Tableau of "first, then second" (operator product U_second * U_first).
CliffordElement compose(const CliffordElement& first, const CliffordElement& second);

/// Group inverse with signs recovered through the symplectic quotient.
CliffordElement clifford_inverse(const CliffordElement& c);

/// Quotient onto the binary symplectic group. Row i is the image bit row of
/// generator i; the kernel is exactly the Pauli products (class == identity).
BinarySymplectic clifford_class(const CliffordElement& c);

/// Conjugation by a single gate, exact in sign.
PauliOperator conjugate_by_gate(const Gate& g, const PauliOperator& p);

/// Bit-level gate action without sign bookkeeping (Pauli frame propagation).
void conjugate_bits_by_gate(const Gate& g, BitRow& x, BitRow& z);

/// Tableau of a gate list applied first-to-last.
CliffordElement clifford_from_circuit(const GateCircuit& circuit, int n);

/// Class of a circuit; shorthand for clifford_class(clifford_from_circuit).
BinarySymplectic circuit_class(const GateCircuit& circuit, int n);

}  // namespace rbkit
