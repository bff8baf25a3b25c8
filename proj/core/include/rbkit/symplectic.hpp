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
#include <functional>
#include <string>
#include <vector>

#include "rbkit/bits.hpp"
#include "rbkit/rng.hpp"

namespace rbkit {

/// 2n x 2n binary matrix M with M S M^T = S over GF(2), where
/// S = [[0, I], [I, 0]]. Row i < n is the image of X_i, row n+i the image of
/// Z_i. Columns 0..n-1 are the x block, columns n..2n-1 the z block.
///
/// These matrices represent conjugation by a Clifford unitary modulo Pauli
/// products: a Pauli with bit row v maps to the XOR of rows selected by v.
class BinarySymplectic {
  public:
    /// Identity on n qubits. Throws CapacityError for n outside [1, 64].
    explicit BinarySymplectic(int n);

    static BinarySymplectic identity(int n) { return BinarySymplectic(n); }
    static BinarySymplectic zero(int n);

    int n() const { return n_; }
    int dim() const { return 2 * n_; }

    bool get(int r, int c) const { return rows_[r].get(c); }
    void set(int r, int c, bool v) { rows_[r].set(c, v); }
    const BitRow& row(int r) const { return rows_[r]; }
    BitRow& row(int r) { return rows_[r]; }

    /// Rows as '0'/'1' strings; character j of a string is column j.
    std::vector<std::string> to_row_strings() const;
    static BinarySymplectic from_row_strings(const std::vector<std::string>& rows);

    /// Whole matrix packed row-major into one word (requires n <= 4).
    /// Ascending keys order matrices in row-major lexicographic order.
    uint64_t packed_key() const;
    static BinarySymplectic from_packed_key(int n, uint64_t key);

    bool operator==(const BinarySymplectic&) const = default;

  private:
    int n_;
    std::vector<BitRow> rows_;
};

/// Symplectic inner product of two rows (x/z block convention above).
bool symplectic_row_product(const BitRow& a, const BitRow& b, int n);

/// True iff M S M^T = S over GF(2).
bool is_symplectic(const BinarySymplectic& m);

/// Application-order product: the class of "a then b" is a * b.
BinarySymplectic symplectic_mul(const BinarySymplectic& a, const BinarySymplectic& b);

/// Group inverse, computed as S A^T S.
BinarySymplectic symplectic_inv(const BinarySymplectic& a);

/// |Sp(2n, 2)| = 2^(n^2) * prod_{j=1..n} (4^j - 1).
/// Throws CapacityError when the count overflows 64 bits.
uint64_t symplectic_group_order(int n);

/// Visits every symplectic matrix in row-major lexicographic order.
/// Supported for n <= 3 (counts 6, 720, 1451520).
void for_each_symplectic(int n, const std::function<void(const BinarySymplectic&)>& fn);

/// Materialized form of for_each_symplectic. The n = 3 list holds 1451520
/// matrices (hundreds of MB); prefer the visitor at that size.
std::vector<BinarySymplectic> enumerate_symplectic(int n);

/// Uniform random group element. n <= 2 indexes the cached enumeration;
/// larger n uses the constructive sampler below.
BinarySymplectic random_symplectic(int n, RandomStream& rng);

/// Uniform sampler that extends a hyperbolic basis pair by pair, drawing
/// each image uniformly from the exact solution set of the symplectic
/// constraints. Works for any supported n; exposed for cross-validation.
BinarySymplectic random_symplectic_direct(int n, RandomStream& rng);

}  // namespace rbkit
