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

#include <bit>
#include <cstdint>

namespace rbkit {

/// 128 bits packed into two machine words. Bit 0 lives in the low word.
/// Wide enough for one row of a 2n x 2n binary matrix with n <= 64.
struct BitRow {
    uint64_t lo = 0;
    uint64_t hi = 0;

    constexpr bool get(int c) const {
        return ((c < 64 ? lo >> c : hi >> (c - 64)) & 1) != 0;
    }
    constexpr void set(int c, bool v) {
        uint64_t mask = uint64_t{1} << (c & 63);
        uint64_t& word = c < 64 ? lo : hi;
        word = v ? (word | mask) : (word & ~mask);
    }
    constexpr void flip(int c) {
        (c < 64 ? lo : hi) ^= uint64_t{1} << (c & 63);
    }

    constexpr BitRow operator^(BitRow o) const { return {lo ^ o.lo, hi ^ o.hi}; }
    constexpr BitRow operator&(BitRow o) const { return {lo & o.lo, hi & o.hi}; }
    constexpr BitRow& operator^=(BitRow o) {
        lo ^= o.lo;
        hi ^= o.hi;
        return *this;
    }
    constexpr bool any() const { return (lo | hi) != 0; }
    constexpr int popcount() const { return std::popcount(lo) + std::popcount(hi); }
    constexpr bool parity() const { return (popcount() & 1) != 0; }

    /// Logical shift right by k bits (0 <= k < 128).
    constexpr BitRow shr(int k) const {
        if (k == 0) return *this;
        if (k >= 64) return {hi >> (k - 64), 0};
        return {(lo >> k) | (hi << (64 - k)), hi >> k};
    }
    /// Logical shift left by k bits (0 <= k < 128).
    constexpr BitRow shl(int k) const {
        if (k == 0) return *this;
        if (k >= 64) return {0, lo << (k - 64)};
        return {lo << k, (hi << k) | (lo >> (64 - k))};
    }
    /// Keeps only bits 0..k-1.
    constexpr BitRow truncated(int k) const {
        BitRow r = *this;
        if (k < 64) {
            r.lo &= (k == 0) ? 0 : (~uint64_t{0} >> (64 - k));
            r.hi = 0;
        } else if (k < 128) {
            r.hi &= (k == 64) ? 0 : (~uint64_t{0} >> (128 - k));
        }
        return r;
    }

    constexpr bool operator==(const BitRow&) const = default;
};

}  // namespace rbkit
