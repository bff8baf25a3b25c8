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

#include "rbkit/symplectic.hpp"

#include <bit>
#include <limits>

#include "rbkit/error.hpp"

namespace rbkit {

namespace {

// Exchanges the x and z column blocks of a row: (x|z) -> (z|x).
BitRow swap_halves(const BitRow& r, int n) {
    return r.shr(n) ^ r.truncated(n).shl(n);
}

// Row value whose bit string (column 0 first) is the binary expansion of
// `code`, most significant bit first. Ascending codes give ascending rows
// in lexicographic order.
BitRow lex_code_to_row(uint64_t code, int width) {
    BitRow r{};
    for (int c = 0; c < width; c++) {
        if ((code >> (width - 1 - c)) & 1) {
            r.set(c, true);
        }
    }
    return r;
}

// Incremental GF(2) row space used for independence checks.
struct RowSpace {
    std::vector<BitRow> reduced;  // echelon rows with distinct lowest set bits

    static int pivot(const BitRow& r) {
        return r.lo ? std::countr_zero(r.lo) : 64 + std::countr_zero(r.hi);
    }

    BitRow reduce(BitRow v) const {
        for (const BitRow& b : reduced) {
            if (v.get(pivot(b))) {
                v ^= b;
            }
        }
        return v;
    }

    bool insert(const BitRow& v) {
        BitRow u = reduce(v);
        if (!u.any()) {
            return false;
        }
        reduced.push_back(u);
        return true;
    }
};

// Solves a set of GF(2) equations coeff . v = rhs over `width` variables.
// Rows are kept fully reduced, so every equation has a unique pivot column
// and no other equation touches that column.
struct Gf2Solver {
    int width;
    std::vector<BitRow> coeffs;
    std::vector<bool> rhs;
    std::vector<int> pivots;

    explicit Gf2Solver(int w) : width(w) {}

    void add_equation(BitRow c, bool r) {
        for (size_t i = 0; i < coeffs.size(); i++) {
            if (c.get(pivots[i])) {
                c ^= coeffs[i];
                r = r != rhs[i];
            }
        }
        if (!c.any()) {
            if (r) {
                throw Error("gf2 system is inconsistent");
            }
            return;
        }
        int p = RowSpace::pivot(c);
        for (size_t i = 0; i < coeffs.size(); i++) {
            if (coeffs[i].get(p)) {
                coeffs[i] ^= c;
                rhs[i] = rhs[i] != r;
            }
        }
        coeffs.push_back(c);
        rhs.push_back(r);
        pivots.push_back(p);
    }

    bool is_pivot(int col) const {
        for (int p : pivots) {
            if (p == col) {
                return true;
            }
        }
        return false;
    }

    // Solution with all free variables set to zero.
    BitRow particular() const {
        BitRow v{};
        for (size_t i = 0; i < coeffs.size(); i++) {
            v.set(pivots[i], rhs[i]);
        }
        return v;
    }

    // One basis vector per free column; vector for column f has bit f set.
    std::vector<BitRow> nullspace_basis() const {
        std::vector<BitRow> basis;
        for (int f = 0; f < width; f++) {
            if (is_pivot(f)) {
                continue;
            }
            BitRow w{};
            w.set(f, true);
            for (size_t i = 0; i < coeffs.size(); i++) {
                w.set(pivots[i], coeffs[i].get(f));
            }
            basis.push_back(w);
        }
        return basis;
    }
};

struct Enumerator {
    int n;
    int d;
    const std::function<void(const BinarySymplectic&)>& fn;
    std::vector<BitRow> rows;
    std::vector<BitRow> swapped;

    Enumerator(int n_in, const std::function<void(const BinarySymplectic&)>& f)
        : n(n_in), d(2 * n_in), fn(f) {}

    void recurse(int k, const RowSpace& space) {
        if (k == d) {
            BinarySymplectic m(n);
            for (int i = 0; i < d; i++) {
                m.row(i) = rows[i];
            }
            fn(m);
            return;
        }
        for (uint64_t code = 0; code < (uint64_t{1} << d); code++) {
            BitRow v = lex_code_to_row(code, d);
            bool ok = true;
            for (int j = 0; j < k && ok; j++) {
                bool want = (j == k - n);
                ok = ((swapped[j] & v).parity() == want);
            }
            if (!ok) {
                continue;
            }
            RowSpace next = space;
            if (!next.insert(v)) {
                continue;
            }
            rows.push_back(v);
            swapped.push_back(swap_halves(v, n));
            recurse(k + 1, next);
            rows.pop_back();
            swapped.pop_back();
        }
    }
};

}  // namespace

BinarySymplectic::BinarySymplectic(int n) : n_(n) {
    if (n < 1 || n > 64) {
        throw CapacityError("qubit count must be in [1, 64], got " + std::to_string(n));
    }
    rows_.assign(2 * n, BitRow{});
    for (int i = 0; i < 2 * n; i++) {
        rows_[i].set(i, true);
    }
}

BinarySymplectic BinarySymplectic::zero(int n) {
    BinarySymplectic m(n);
    for (auto& r : m.rows_) {
        r = BitRow{};
    }
    return m;
}

std::vector<std::string> BinarySymplectic::to_row_strings() const {
    std::vector<std::string> out;
    out.reserve(dim());
    for (int r = 0; r < dim(); r++) {
        std::string s(dim(), '0');
        for (int c = 0; c < dim(); c++) {
            if (get(r, c)) {
                s[c] = '1';
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

BinarySymplectic BinarySymplectic::from_row_strings(const std::vector<std::string>& rows) {
    size_t d = rows.size();
    if (d < 2 || d % 2 != 0 || d > 128) {
        throw ParseError("matrix must have an even number of rows in [2, 128]");
    }
    BinarySymplectic m = zero(static_cast<int>(d / 2));
    for (size_t r = 0; r < d; r++) {
        if (rows[r].size() != d) {
            throw ParseError("matrix row " + std::to_string(r) + " must have " +
                             std::to_string(d) + " characters");
        }
        for (size_t c = 0; c < d; c++) {
            char ch = rows[r][c];
            if (ch != '0' && ch != '1') {
                throw ParseError("matrix entries must be '0' or '1'");
            }
            m.set(static_cast<int>(r), static_cast<int>(c), ch == '1');
        }
    }
    return m;
}

uint64_t BinarySymplectic::packed_key() const {
    if (n_ > 4) {
        throw CapacityError("packed_key requires n <= 4");
    }
    uint64_t key = 0;
    for (int r = 0; r < dim(); r++) {
        for (int c = 0; c < dim(); c++) {
            key = (key << 1) | (get(r, c) ? 1 : 0);
        }
    }
    return key;
}

BinarySymplectic BinarySymplectic::from_packed_key(int n, uint64_t key) {
    if (n > 4) {
        throw CapacityError("from_packed_key requires n <= 4");
    }
    BinarySymplectic m = zero(n);
    int d = 2 * n;
    for (int r = d - 1; r >= 0; r--) {
        for (int c = d - 1; c >= 0; c--) {
            m.set(r, c, (key & 1) != 0);
            key >>= 1;
        }
    }
    return m;
}

bool symplectic_row_product(const BitRow& a, const BitRow& b, int n) {
    BitRow ax = a.truncated(n);
    BitRow az = a.shr(n);
    BitRow bx = b.truncated(n);
    BitRow bz = b.shr(n);
    return (ax & bz).parity() != (az & bx).parity();
}

bool is_symplectic(const BinarySymplectic& m) {
    int d = m.dim();
    int n = m.n();
    for (int i = 0; i < d; i++) {
        for (int j = i + 1; j < d; j++) {
            bool want = (j - i == n);
            if (symplectic_row_product(m.row(i), m.row(j), n) != want) {
                return false;
            }
        }
    }
    return true;
}

BinarySymplectic symplectic_mul(const BinarySymplectic& a, const BinarySymplectic& b) {
    if (a.n() != b.n()) {
        throw DimensionError("symplectic_mul: operand sizes differ");
    }
    BinarySymplectic out = BinarySymplectic::zero(a.n());
    for (int i = 0; i < a.dim(); i++) {
        BitRow acc{};
        uint64_t w = a.row(i).lo;
        while (w) {
            acc ^= b.row(std::countr_zero(w));
            w &= w - 1;
        }
        w = a.row(i).hi;
        while (w) {
            acc ^= b.row(64 + std::countr_zero(w));
            w &= w - 1;
        }
        out.row(i) = acc;
    }
    return out;
}

BinarySymplectic symplectic_inv(const BinarySymplectic& a) {
    int d = a.dim();
    int n = a.n();
    BinarySymplectic out = BinarySymplectic::zero(n);
    for (int i = 0; i < d; i++) {
        int si = (i + n) % d;
        for (int j = 0; j < d; j++) {
            out.set(i, j, a.get((j + n) % d, si));
        }
    }
    return out;
}

uint64_t symplectic_group_order(int n) {
    if (n < 1 || n > 64) {
        throw CapacityError("qubit count must be in [1, 64]");
    }
    constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
    using u128 = unsigned __int128;
    u128 total = 1;
    for (int j = 1; j <= n; j++) {
        total *= (u128{1} << (2 * j)) - 1;
        if (total > kMax) {
            throw CapacityError("group order overflows 64 bits");
        }
    }
    for (int b = 0; b < n * n; b++) {
        total <<= 1;
        if (total > kMax) {
            throw CapacityError("group order overflows 64 bits");
        }
    }
    return static_cast<uint64_t>(total);
}

void for_each_symplectic(int n, const std::function<void(const BinarySymplectic&)>& fn) {
    if (n < 1) {
        throw DimensionError("qubit count must be positive");
    }
    if (n > 3) {
        throw CapacityError("enumeration supported for n <= 3");
    }
    Enumerator e(n, fn);
    e.recurse(0, RowSpace{});
}

std::vector<BinarySymplectic> enumerate_symplectic(int n) {
    if (n > 3) {
        throw CapacityError("enumeration supported for n <= 3");
    }
    std::vector<BinarySymplectic> out;
    out.reserve(symplectic_group_order(n));
    for_each_symplectic(n, [&](const BinarySymplectic& m) { out.push_back(m); });
    return out;
}

namespace {

const std::vector<BinarySymplectic>& cached_enumeration(int n) {
    static const std::vector<BinarySymplectic> one = enumerate_symplectic(1);
    static const std::vector<BinarySymplectic> two = enumerate_symplectic(2);
    return n == 1 ? one : two;
}

BitRow random_combination(const std::vector<BitRow>& basis, RandomStream& rng, bool nonzero) {
    for (;;) {
        BitRow v{};
        bool all_zero = true;
        uint64_t word = 0;
        int bits_left = 0;
        for (const BitRow& b : basis) {
            if (bits_left == 0) {
                word = rng.next_u64();
                bits_left = 64;
            }
            if (word & 1) {
                v ^= b;
                all_zero = false;
            }
            word >>= 1;
            bits_left--;
        }
        if (!nonzero || !all_zero) {
            return v;
        }
    }
}

}  // namespace

BinarySymplectic random_symplectic(int n, RandomStream& rng) {
    if (n < 1 || n > 64) {
        throw CapacityError("qubit count must be in [1, 64]");
    }
    if (n <= 2) {
        const auto& all = cached_enumeration(n);
        return all[rng.uniform_below(all.size())];
    }
    return random_symplectic_direct(n, rng);
}

BinarySymplectic random_symplectic_direct(int n, RandomStream& rng) {
    if (n < 1 || n > 64) {
        throw CapacityError("qubit count must be in [1, 64]");
    }
    int d = 2 * n;
    BinarySymplectic m = BinarySymplectic::zero(n);
    std::vector<int> placed;
    for (int pair = 0; pair < n; pair++) {
        // Image of X_pair: uniform nonzero solution of the homogeneous
        // constraints against every placed row. Solutions are automatically
        // independent of the placed rows.
        {
            Gf2Solver solver(d);
            for (int j : placed) {
                solver.add_equation(swap_halves(m.row(j), n), false);
            }
            m.row(pair) = random_combination(solver.nullspace_basis(), rng, true);
            placed.push_back(pair);
        }
        // Image of Z_pair: uniform solution with product 1 against X_pair
        // and 0 against everything else.
        {
            Gf2Solver solver(d);
            for (int j : placed) {
                solver.add_equation(swap_halves(m.row(j), n), j == pair);
            }
            BitRow v = solver.particular();
            v ^= random_combination(solver.nullspace_basis(), rng, false);
            m.row(n + pair) = v;
            placed.push_back(n + pair);
        }
    }
    return m;
}

}  // namespace rbkit
