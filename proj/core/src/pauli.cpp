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

#include "rbkit/pauli.hpp"

#include "rbkit/error.hpp"

namespace rbkit {

char axis_char(Axis a) {
    switch (a) {
        case Axis::I:
            return 'I';
        case Axis::X:
            return 'X';
        case Axis::Y:
            return 'Y';
        case Axis::Z:
            return 'Z';
    }
    throw Error("invalid axis");
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'I':
            return Axis::I;
        case 'X':
            return Axis::X;
        case 'Y':
            return Axis::Y;
        case 'Z':
            return Axis::Z;
        default:
            throw ParseError(std::string("invalid Pauli letter '") + c + "'");
    }
}

PauliOperator::PauliOperator(int n) : n_(n), phase_(0) {
    if (n < 1 || n > 64) {
        throw CapacityError("qubit count must be in [1, 64]");
    }
}

PauliOperator PauliOperator::single(int n, int q, Axis a) {
    PauliOperator p(n);
    if (q < 0 || q >= n) {
        throw DimensionError("qubit index out of range");
    }
    switch (a) {
        case Axis::I:
            break;
        case Axis::X:
            p.x_.set(q, true);
            break;
        case Axis::Y:
            p.x_.set(q, true);
            p.z_.set(q, true);
            p.phase_ = 1;
            break;
        case Axis::Z:
            p.z_.set(q, true);
            break;
    }
    return p;
}

PauliOperator PauliOperator::from_bits(int n, BitRow x, BitRow z, uint8_t phase) {
    PauliOperator p(n);
    p.x_ = x.truncated(n);
    p.z_ = z.truncated(n);
    p.phase_ = phase & 3;
    return p;
}

PauliOperator PauliOperator::from_bits_hermitian(int n, BitRow x, BitRow z, int sign) {
    int y_count = (x & z).popcount();
    uint8_t phase = static_cast<uint8_t>((y_count + (sign < 0 ? 2 : 0)) & 3);
    return from_bits(n, x, z, phase);
}

PauliOperator PauliOperator::from_string(std::string_view s) {
    int sign = 1;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        sign = s.front() == '-' ? -1 : 1;
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw ParseError("empty Pauli string");
    }
    PauliOperator p(static_cast<int>(s.size()));
    BitRow x{}, z{};
    for (size_t q = 0; q < s.size(); q++) {
        Axis a = axis_from_char(s[q]);
        if (a == Axis::X || a == Axis::Y) {
            x.set(static_cast<int>(q), true);
        }
        if (a == Axis::Z || a == Axis::Y) {
            z.set(static_cast<int>(q), true);
        }
    }
    return from_bits_hermitian(static_cast<int>(s.size()), x, z, sign);
}

std::string PauliOperator::to_string() const {
    std::string out(static_cast<size_t>(n_) + 1, '?');
    out[0] = sign() < 0 ? '-' : '+';
    for (int q = 0; q < n_; q++) {
        out[static_cast<size_t>(q) + 1] = axis_char(axis_at(q));
    }
    return out;
}

Axis PauliOperator::axis_at(int q) const {
    bool x = x_.get(q);
    bool z = z_.get(q);
    if (x && z) {
        return Axis::Y;
    }
    if (x) {
        return Axis::X;
    }
    if (z) {
        return Axis::Z;
    }
    return Axis::I;
}

bool PauliOperator::is_hermitian() const {
    return ((phase_ - (x_ & z_).popcount()) & 1) == 0;
}

int PauliOperator::sign() const {
    int r = (phase_ - (x_ & z_).popcount()) & 3;
    if (r == 0) {
        return 1;
    }
    if (r == 2) {
        return -1;
    }
    throw Error("Pauli operator is not Hermitian");
}

bool PauliOperator::commutes_with(const PauliOperator& o) const {
    if (n_ != o.n_) {
        throw DimensionError("Pauli sizes differ");
    }
    return ((x_ & o.z_).popcount() + (z_ & o.x_).popcount()) % 2 == 0;
}

PauliOperator PauliOperator::operator*(const PauliOperator& o) const {
    if (n_ != o.n_) {
        throw DimensionError("Pauli sizes differ");
    }
    PauliOperator out(n_);
    // Z^z1 moves past X^x2 at the cost of (-1)^|z1 & x2|.
    int cross = (z_ & o.x_).popcount();
    out.x_ = x_ ^ o.x_;
    out.z_ = z_ ^ o.z_;
    out.phase_ = static_cast<uint8_t>((phase_ + o.phase_ + 2 * cross) & 3);
    return out;
}

}  // namespace rbkit
