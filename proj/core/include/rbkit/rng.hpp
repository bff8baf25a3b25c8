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

namespace rbkit {

/// Deterministic random stream (xoshiro256** seeded through splitmix64).
///
/// Streams are derived from a master seed plus (domain, index) counters, so
/// per-sequence and per-resample streams are independent of scheduling order.
/// All sampling helpers are implemented locally; outputs are identical across
/// platforms and standard libraries.
class RandomStream {
  public:
    explicit RandomStream(uint64_t seed);

    /// Stream for item `index` of a domain under `master_seed`. The same
    /// triple always yields the same stream regardless of evaluation order.
    static RandomStream derive(uint64_t master_seed, uint64_t domain, uint64_t index);

    uint64_t next_u64();

    /// Unbiased integer in [0, bound). bound = 0 is invalid.
    uint64_t uniform_below(uint64_t bound);

    /// Double in [0, 1) with 53 random bits.
    double uniform_double();

    bool bernoulli(double p);

    /// Number of successes among `trials` independent Bernoulli(p) draws.
    uint32_t binomial(uint32_t trials, double p);

  private:
    uint64_t s_[4];
};

/// Domain tags for RandomStream::derive. Fixed values are part of the
/// reproducibility contract: changing them changes generated artifacts.
namespace rng_domain {
inline constexpr uint64_t kGenerate = 1;
inline constexpr uint64_t kSimulate = 2;
inline constexpr uint64_t kBootstrap = 3;
}  // namespace rng_domain

}  // namespace rbkit
