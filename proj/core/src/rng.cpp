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

#include "rbkit/rng.hpp"

#include <bit>

#include "rbkit/error.hpp"

namespace rbkit {

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(uint64_t seed) {
    uint64_t state = seed;
    for (auto& word : s_) {
        word = splitmix64(state);
    }
    // xoshiro must not start from the all-zero state.
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) {
        s_[0] = 1;
    }
}

RandomStream RandomStream::derive(uint64_t master_seed, uint64_t domain, uint64_t index) {
    uint64_t state = master_seed;
    uint64_t a = splitmix64(state);
    state = a ^ (domain * 0xd6e8feb86659fd93ULL);
    uint64_t b = splitmix64(state);
    state = b ^ (index * 0xa5cb3d8436c8db1bULL);
    return RandomStream(splitmix64(state));
}

uint64_t RandomStream::next_u64() {
    uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

uint64_t RandomStream::uniform_below(uint64_t bound) {
    if (bound == 0) {
        throw Error("uniform_below: bound must be positive");
    }
    // Rejection sampling on the top of the range keeps the draw unbiased.
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next_u64();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

double RandomStream::uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RandomStream::bernoulli(double p) {
    if (p <= 0) {
        return false;
    }
    if (p >= 1) {
        return true;
    }
    return uniform_double() < p;
}

uint32_t RandomStream::binomial(uint32_t trials, double p) {
    uint32_t hits = 0;
    for (uint32_t i = 0; i < trials; i++) {
        hits += bernoulli(p) ? 1 : 0;
    }
    return hits;
}

}  // namespace rbkit
