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

#include "rbkit/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <thread>
#include <utility>

#include "rbkit/bits.hpp"
#include "rbkit/clifford.hpp"
#include "rbkit/error.hpp"

namespace rbkit {

namespace {

/// Average error probability to depolarization probability: the channel
/// must mix in the maximally mixed state at rate d for the surviving
/// fraction to match 1 - 2^n/(2^n-1) * eps per application.
double depol_probability(double eps, int n) {
    double dim = std::ldexp(1.0, n);
    return eps * dim / (dim - 1.0);
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(std::string(what) + " must be a probability in [0,1]");
    }
}

}  // namespace

void validate_noise(const NoiseModel& noise, int n) {
    check_probability(noise.step_depol, "step_depol");
    check_probability(noise.prep_meas_error, "prep_meas_error");
    check_probability(noise.interleaved_gate_depol, "interleaved_gate_depol");
    check_probability(noise.readout_flip, "readout_flip");
    for (const auto& [kind, eps] : noise.per_gate_depol) {
        check_probability(eps, "per_gate_depol");
        if (depol_probability(eps, n) > 1.0) {
            throw Error("per_gate_depol implies depolarization probability above 1");
        }
    }
    if (depol_probability(noise.step_depol, n) > 1.0 ||
        depol_probability(noise.prep_meas_error, n) > 1.0 ||
        depol_probability(noise.interleaved_gate_depol, n) > 1.0) {
        throw Error("average error implies depolarization probability above 1");
    }
    if (!std::isfinite(noise.coherent_overrotation)) {
        throw Error("coherent_overrotation must be finite");
    }
}

namespace {

// ---------------------------------------------------------------------------
// Pauli-frame engine. Faults commute through the remaining Clifford gates,
// so one run tracks only the composite fault's (x, z) bits. A uniformly
// random Pauli (identity included) injected with probability d reproduces
// the depolarizing channel at rate d exactly.
// ---------------------------------------------------------------------------

struct FrameRun {
    BitRow x{};
    BitRow z{};
};

BitRow random_bits(RandomStream& rng, int n) {
    uint64_t mask = n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    BitRow row{};
    row.lo = rng.next_u64() & mask;
    return row;
}

void inject_depol(FrameRun& frame, double d, int n, RandomStream& rng) {
    if (d > 0.0 && rng.bernoulli(d)) {
        frame.x ^= random_bits(rng, n);
        frame.z ^= random_bits(rng, n);
    }
}

void walk_gates(FrameRun& frame, const GateCircuit& circuit, const NoiseModel& noise, int n,
                RandomStream& rng) {
    for (const Gate& g : circuit) {
        conjugate_bits_by_gate(g, frame.x, frame.z);
        if (!noise.per_gate_depol.empty()) {
            auto it = noise.per_gate_depol.find(g.kind);
            if (it != noise.per_gate_depol.end()) {
                inject_depol(frame, depol_probability(it->second, n), n, rng);
            }
        }
    }
}

void append_pulse_gates(GateCircuit& c, const std::vector<PauliPulse>& pulses) {
    for (size_t q = 0; q < pulses.size(); q++) {
        c.push_back(Gate::pauli(static_cast<int>(q), pulses[q].axis, pulses[q].sign));
    }
}

}  // namespace

RunRecord simulate_stabilizer(const BenchmarkSequence& seq, const NoiseModel& noise, int runs,
                              RandomStream& rng) {
    int n = seq.n_qubits;
    validate_noise(noise, n);
    if (noise.coherent_overrotation != 0.0) {
        throw UnsupportedGateError(
            "coherent over-rotation is not a Pauli channel; use the dense engine");
    }
    if (runs < 0) {
        throw Error("runs must be nonnegative");
    }
    double d_step = depol_probability(noise.step_depol, n);
    double d_inter = depol_probability(noise.interleaved_gate_depol, n);
    double d_pm = depol_probability(noise.prep_meas_error, n);

    // Pre-expand per-phase circuits once; runs only replay them.
    std::vector<GateCircuit> step_circuits;
    step_circuits.reserve(seq.steps.size());
    for (const StepRecord& step : seq.steps) {
        GateCircuit c;
        append_pulse_gates(c, step.pulses);
        c.insert(c.end(), step.circuit.begin(), step.circuit.end());
        step_circuits.push_back(std::move(c));
    }
    GateCircuit final_circuit;
    append_pulse_gates(final_circuit, seq.final_step.pulses);
    final_circuit.insert(final_circuit.end(), seq.final_step.circuit.begin(),
                         seq.final_step.circuit.end());

    uint64_t mask = seq.prediction.mask;
    int successes = 0;
    for (int run = 0; run < runs; run++) {
        FrameRun frame;
        for (const GateCircuit& c : step_circuits) {
            walk_gates(frame, c, noise, n, rng);
            inject_depol(frame, d_step, n, rng);
            if (seq.interleaved) {
                walk_gates(frame, *seq.interleaved, noise, n, rng);
                inject_depol(frame, d_inter, n, rng);
            }
        }
        walk_gates(frame, final_circuit, noise, n, rng);
        inject_depol(frame, d_pm, n, rng);

        bool ok;
        if (!seq.prediction.is_parity()) {
            // A fault flips outcome bit q iff it anticommutes with Z_q.
            uint64_t flips = frame.x.lo;
            if (noise.readout_flip > 0.0) {
                for (int q = 0; q < n; q++) {
                    if (rng.bernoulli(noise.readout_flip)) {
                        flips ^= uint64_t{1} << q;
                    }
                }
            }
            ok = flips == 0;
        } else {
            int parity_flips = std::popcount(frame.x.lo & mask);
            if (noise.readout_flip > 0.0) {
                for (int q = 0; q < n; q++) {
                    if (((mask >> q) & 1) && rng.bernoulli(noise.readout_flip)) {
                        parity_flips++;
                    }
                }
            }
            ok = parity_flips % 2 == 0;
        }
        successes += ok ? 1 : 0;
    }
    return RunRecord{seq.id, seq.length, runs, successes};
}

namespace {

// ---------------------------------------------------------------------------
// Dense engine: exact density-matrix propagation, dimension 2^n <= 8.
// ---------------------------------------------------------------------------

using Cx = std::complex<double>;

struct Dense {
    int n;
    size_t dim;
    std::vector<Cx> rho;
};

/// One- or two-qubit unitary expanded to the full register. Qubit 0 is the
/// most significant index bit.
std::vector<Cx> expand_unitary(const std::vector<Cx>& u, const std::vector<int>& qubits,
                               int n) {
    size_t dim = size_t{1} << n;
    size_t udim = size_t{1} << qubits.size();
    std::vector<Cx> full(dim * dim, Cx{0, 0});
    for (size_t row = 0; row < dim; row++) {
        for (size_t ucol = 0; ucol < udim; ucol++) {
            size_t urow = 0;
            for (size_t k = 0; k < qubits.size(); k++) {
                urow |= ((row >> (n - 1 - qubits[k])) & 1) << (qubits.size() - 1 - k);
            }
            Cx amp = u[urow * udim + ucol];
            if (amp == Cx{0, 0}) {
                continue;
            }
            size_t col = row;
            for (size_t k = 0; k < qubits.size(); k++) {
                size_t bit = (ucol >> (qubits.size() - 1 - k)) & 1;
                size_t pos = static_cast<size_t>(n - 1 - qubits[k]);
                col = (col & ~(size_t{1} << pos)) | (bit << pos);
            }
            full[row * dim + col] = amp;
        }
    }
    return full;
}

std::vector<Cx> axis_matrix(Axis a) {
    switch (a) {
        case Axis::X: return {Cx{0, 0}, Cx{1, 0}, Cx{1, 0}, Cx{0, 0}};
        case Axis::Y: return {Cx{0, 0}, Cx{0, -1}, Cx{0, 1}, Cx{0, 0}};
        case Axis::Z: return {Cx{1, 0}, Cx{0, 0}, Cx{0, 0}, Cx{-1, 0}};
        case Axis::I: break;
    }
    return {Cx{1, 0}, Cx{0, 0}, Cx{0, 0}, Cx{1, 0}};
}

std::vector<Cx> rotation_matrix(Axis a, double theta) {
    std::vector<Cx> sigma = axis_matrix(a);
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    std::vector<Cx> u(4);
    std::vector<Cx> ident = axis_matrix(Axis::I);
    for (int i = 0; i < 4; i++) {
        u[static_cast<size_t>(i)] =
            c * ident[static_cast<size_t>(i)] - Cx{0, 1} * s * sigma[static_cast<size_t>(i)];
    }
    return u;
}

/// Unitary of one gate on the full register. Over-rotation scales the angle
/// of driven x/y pulses only: z rotations are frame updates and two-qubit
/// gates are calibrated separately, so both stay exact.
std::vector<Cx> gate_unitary(const Gate& g, int n, double overrot) {
    double scale = 1.0 + overrot;
    switch (g.kind) {
        case GateKind::RX:
            return expand_unitary(rotation_matrix(Axis::X, g.turns * (M_PI / 2) * scale),
                                  {g.q0}, n);
        case GateKind::RY:
            return expand_unitary(rotation_matrix(Axis::Y, g.turns * (M_PI / 2) * scale),
                                  {g.q0}, n);
        case GateKind::RZ:
            return expand_unitary(rotation_matrix(Axis::Z, g.turns * (M_PI / 2)), {g.q0}, n);
        case GateKind::PAULI: {
            if (g.axis == Axis::I) {
                return expand_unitary(axis_matrix(Axis::I), {g.q0}, n);
            }
            double pulse_scale = g.axis == Axis::Z ? 1.0 : scale;
            return expand_unitary(rotation_matrix(g.axis, -g.sign * M_PI * pulse_scale),
                                  {g.q0}, n);
        }
        case GateKind::ID:
            return expand_unitary(axis_matrix(Axis::I), {g.q0}, n);
        case GateKind::G: {
            std::vector<Cx> u(16, Cx{0, 0});
            u[0] = Cx{1, 0};
            u[5] = Cx{0, 1};
            u[10] = Cx{0, 1};
            u[15] = Cx{1, 0};
            return expand_unitary(u, {g.q0, g.q1}, n);
        }
        case GateKind::CNOT: {
            std::vector<Cx> u(16, Cx{0, 0});
            u[0] = Cx{1, 0};
            u[5] = Cx{1, 0};
            u[11] = Cx{1, 0};
            u[14] = Cx{1, 0};
            return expand_unitary(u, {g.q0, g.q1}, n);
        }
    }
    throw Error("unknown gate kind");
}

void apply_unitary(Dense& d, const std::vector<Cx>& u) {
    size_t dim = d.dim;
    std::vector<Cx> tmp(dim * dim, Cx{0, 0});
    // tmp = U rho
    for (size_t i = 0; i < dim; i++) {
        for (size_t k = 0; k < dim; k++) {
            Cx uik = u[i * dim + k];
            if (uik == Cx{0, 0}) {
                continue;
            }
            for (size_t j = 0; j < dim; j++) {
                tmp[i * dim + j] += uik * d.rho[k * dim + j];
            }
        }
    }
    // rho = tmp U^dag
    std::fill(d.rho.begin(), d.rho.end(), Cx{0, 0});
    for (size_t i = 0; i < dim; i++) {
        for (size_t k = 0; k < dim; k++) {
            Cx t = tmp[i * dim + k];
            if (t == Cx{0, 0}) {
                continue;
            }
            for (size_t j = 0; j < dim; j++) {
                d.rho[i * dim + j] += t * std::conj(u[j * dim + k]);
            }
        }
    }
}

void apply_depol(Dense& d, double prob) {
    if (prob <= 0.0) {
        return;
    }
    Cx trace{0, 0};
    for (size_t i = 0; i < d.dim; i++) {
        trace += d.rho[i * d.dim + i];
    }
    Cx mixed = trace / static_cast<double>(d.dim);
    for (size_t i = 0; i < d.dim; i++) {
        for (size_t j = 0; j < d.dim; j++) {
            d.rho[i * d.dim + j] *= 1.0 - prob;
        }
        d.rho[i * d.dim + i] += prob * mixed;
    }
}

void apply_circuit(Dense& d, const GateCircuit& circuit, const NoiseModel& noise) {
    for (const Gate& g : circuit) {
        apply_unitary(d, gate_unitary(g, d.n, noise.coherent_overrotation));
        if (!noise.per_gate_depol.empty()) {
            auto it = noise.per_gate_depol.find(g.kind);
            if (it != noise.per_gate_depol.end()) {
                apply_depol(d, depol_probability(it->second, d.n));
            }
        }
    }
}

}  // namespace

double dense_success_probability(const BenchmarkSequence& seq, const NoiseModel& noise) {
    int n = seq.n_qubits;
    validate_noise(noise, n);
    if (n > 3) {
        throw CapacityError("dense engine supports at most 3 qubits");
    }
    Dense d{n, size_t{1} << n, {}};
    d.rho.assign(d.dim * d.dim, Cx{0, 0});
    d.rho[(d.dim - 1) * d.dim + (d.dim - 1)] = Cx{1, 0};  // all qubits spin-down

    for (const StepRecord& step : seq.steps) {
        GateCircuit c;
        append_pulse_gates(c, step.pulses);
        c.insert(c.end(), step.circuit.begin(), step.circuit.end());
        apply_circuit(d, c, noise);
        apply_depol(d, depol_probability(noise.step_depol, n));
        if (seq.interleaved) {
            apply_circuit(d, *seq.interleaved, noise);
            apply_depol(d, depol_probability(noise.interleaved_gate_depol, n));
        }
    }
    GateCircuit fin;
    append_pulse_gates(fin, seq.final_step.pulses);
    fin.insert(fin.end(), seq.final_step.circuit.begin(), seq.final_step.circuit.end());
    apply_circuit(d, fin, noise);
    apply_depol(d, depol_probability(noise.prep_meas_error, n));

    // Diagonal sanity: trace 1, probabilities nonnegative.
    double trace = 0.0;
    for (size_t i = 0; i < d.dim; i++) {
        double p = d.rho[i * d.dim + i].real();
        if (p < -1e-12) {
            throw Error("dense engine produced a negative probability");
        }
        trace += p;
    }
    if (std::abs(trace - 1.0) > 1e-10) {
        throw Error("dense engine lost trace normalization");
    }

    double f = noise.readout_flip;
    double p_success = 0.0;
    if (!seq.prediction.is_parity()) {
        for (size_t b = 0; b < d.dim; b++) {
            double pb = d.rho[b * d.dim + b].real();
            if (pb <= 0.0) {
                continue;
            }
            double match = 1.0;
            for (int q = 0; q < n; q++) {
                bool down = ((b >> (n - 1 - q)) & 1) != 0;
                bool want_down = seq.prediction.bits[static_cast<size_t>(q)] == '0';
                match *= down == want_down ? 1.0 - f : f;
            }
            p_success += pb * match;
        }
    } else {
        int m = std::popcount(seq.prediction.mask);
        double keep = (1.0 + std::pow(1.0 - 2.0 * f, m)) / 2.0;
        for (size_t b = 0; b < d.dim; b++) {
            double pb = d.rho[b * d.dim + b].real();
            if (pb == 0.0) {
                continue;
            }
            int parity = 1;
            for (int q = 0; q < n; q++) {
                if (((seq.prediction.mask >> q) & 1) && ((b >> (n - 1 - q)) & 1)) {
                    parity = -parity;
                }
            }
            p_success += pb * (parity == seq.prediction.parity ? keep : 1.0 - keep);
        }
    }
    return std::clamp(p_success, 0.0, 1.0);
}

SimResult simulate_dense(const BenchmarkSequence& seq, const NoiseModel& noise, int runs,
                         RandomStream& rng) {
    if (runs < 0) {
        throw Error("runs must be nonnegative");
    }
    double p = dense_success_probability(seq, noise);
    int successes = static_cast<int>(rng.binomial(static_cast<uint32_t>(runs), p));
    return SimResult{RunRecord{seq.id, seq.length, runs, successes}, p};
}

BenchmarkResult run_benchmark(const BenchmarkConfig& config, const NoiseModel& noise, int jobs) {
    validate_config(config);
    validate_noise(noise, config.n_qubits);
    BenchmarkConfig bare = config;
    bare.interleaved_gate.reset();
    BenchmarkResult result;
    result.base_sequences = generate_set(bare, jobs);
    if (config.interleaved_gate) {
        result.interleaved_sequences.reserve(result.base_sequences.size());
        for (const BenchmarkSequence& base : result.base_sequences) {
            result.interleaved_sequences.push_back(interleave(base, *config.interleaved_gate));
        }
    }
    size_t total = result.base_sequences.size();
    result.base_records.resize(total);
    result.interleaved_records.resize(result.interleaved_sequences.size());
    // Stream index: 2*id for the base run, 2*id+1 for the interleaved twin.
    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; i++) {
            uint64_t id = static_cast<uint64_t>(result.base_sequences[i].id);
            RandomStream rng =
                RandomStream::derive(config.master_seed, rng_domain::kSimulate, 2 * id);
            result.base_records[i] = simulate_stabilizer(
                result.base_sequences[i], noise, config.runs_per_sequence, rng);
            if (!result.interleaved_sequences.empty()) {
                RandomStream rng2 =
                    RandomStream::derive(config.master_seed, rng_domain::kSimulate, 2 * id + 1);
                result.interleaved_records[i] = simulate_stabilizer(
                    result.interleaved_sequences[i], noise, config.runs_per_sequence, rng2);
            }
        }
    };
    int workers = jobs < 1 ? 1 : jobs;
    if (workers == 1 || total <= 1) {
        work(0, total);
    } else {
        size_t w = std::min<size_t>(static_cast<size_t>(workers), total);
        std::vector<std::thread> threads;
        threads.reserve(w);
        size_t chunk = (total + w - 1) / w;
        for (size_t t = 0; t < w; t++) {
            size_t begin = t * chunk;
            size_t end = std::min(total, begin + chunk);
            if (begin < end) {
                threads.emplace_back(work, begin, end);
            }
        }
        for (std::thread& th : threads) {
            th.join();
        }
    }
    return result;
}

}  // namespace rbkit
