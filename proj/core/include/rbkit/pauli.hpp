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
#include <string>
#include <string_view>

#include "rbkit/bits.hpp"

namespace rbkit {

enum class Axis : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

/// One hardware Pauli pulse exp(sign * i * (pi/2) * sigma_axis).
/// Both signs conjugate identically; the sign is kept for serialization.
struct PauliPulse {
    Axis axis = Axis::I;
    int sign = 1;

    bool operator==(const PauliPulse&) const = default;
};

/// n-qubit Pauli product i^phase * prod_q X_q^{x_q} Z_q^{z_q}, phase mod 4.
/// The Hermitian letter Y_q stands for i * X_q Z_q.
class PauliOperator {
  public:
    explicit PauliOperator(int n);

    static PauliOperator identity(int n) { return PauliOperator(n); }
    /// Hermitian single-qubit letter embedded at qubit q.
    static PauliOperator single(int n, int q, Axis a);
    static PauliOperator from_bits(int n, BitRow x, BitRow z, uint8_t phase);
    /// Hermitian operator with the given letter bits and overall sign.
    static PauliOperator from_bits_hermitian(int n, BitRow x, BitRow z, int sign);
    /// Parses "+XZ", "-IY", "XX" (sign optional, defaults to '+').
    static PauliOperator from_string(std::string_view s);

    /// Sign character plus one letter per qubit. Requires a Hermitian value.
    std::string to_string() const;

    int n() const { return n_; }
    bool x_bit(int q) const { return x_.get(q); }
    bool z_bit(int q) const { return z_.get(q); }
    const BitRow& x_bits() const { return x_; }
    const BitRow& z_bits() const { return z_; }
    uint8_t phase_exp() const { return phase_; }
    Axis axis_at(int q) const;

    bool is_identity_bits() const { return !x_.any() && !z_.any(); }
    bool is_z_type() const { return !x_.any(); }
    bool is_hermitian() const;
    /// +1 or -1; requires a Hermitian value.
    int sign() const;

    bool commutes_with(const PauliOperator& o) const;

    /// Row (x-block | z-block) used by the binary symplectic quotient.
    BitRow class_row() const { return x_ ^ z_.shl(n_); }

    /// Exact operator product with i-power bookkeeping.
    PauliOperator operator*(const PauliOperator& o) const;

    bool operator==(const PauliOperator&) const = default;

  private:
    int n_;
    BitRow x_;
    BitRow z_;
    uint8_t phase_;
};

}  // namespace rbkit
