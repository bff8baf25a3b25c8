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

#include "rbkit/benchgen.hpp"

#include <algorithm>
#include <optional>
#include <thread>
#include <utility>

#include "rbkit/error.hpp"
#include "rbkit/synth.hpp"

namespace rbkit {

namespace {

std::vector<PauliPulse> draw_pulses(int n, RandomStream& rng) {
    std::vector<PauliPulse> pulses;
    pulses.reserve(static_cast<size_t>(n));
    for (int q = 0; q < n; q++) {
        Axis axis = static_cast<Axis>(rng.uniform_below(4));
        int sign = rng.bernoulli(0.5) ? 1 : -1;
        pulses.push_back({axis, sign});
    }
    return pulses;
}

void append_pulse_gates(GateCircuit& c, const std::vector<PauliPulse>& pulses) {
    for (size_t q = 0; q < pulses.size(); q++) {
        c.push_back(Gate::pauli(static_cast<int>(q), pulses[q].axis, pulses[q].sign));
    }
}

/// Product class of the steps including any interleaved circuit; the Pauli
/// pulses are class-trivial and do not appear.
BinarySymplectic pre_final_class(const BenchmarkSequence& seq) {
    int n = seq.n_qubits;
    BinarySymplectic m = BinarySymplectic::identity(n);
    std::optional<BinarySymplectic> inter_cls;
    if (seq.interleaved) {
        inter_cls = circuit_class(*seq.interleaved, n);
    }
    for (const StepRecord& step : seq.steps) {
        m = symplectic_mul(m, step.cls);
        if (inter_cls) {
            m = symplectic_mul(m, *inter_cls);
        }
    }
    return m;
}

/// Uniform element of GL(n,2) by rejection, returned as the symplectic
/// class block-diag(A, (A^T)^-1), the CNOT-generated subgroup modulo Pauli.
BinarySymplectic random_logical_class(int n, RandomStream& rng) {
    if (n > 64) {
        throw CapacityError("logical sampling supports at most 64 qubits");
    }
    uint64_t mask = n == 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    std::vector<uint64_t> a(static_cast<size_t>(n));
    while (true) {
        for (int i = 0; i < n; i++) {
            a[static_cast<size_t>(i)] = rng.next_u64() & mask;
        }
        // Invertibility by elimination on a copy.
        std::vector<uint64_t> rows = a;
        bool ok = true;
        for (int col = 0; col < n && ok; col++) {
            int pivot = -1;
            for (int r = col; r < n; r++) {
                if ((rows[static_cast<size_t>(r)] >> col) & 1) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) {
                ok = false;
                break;
            }
            std::swap(rows[static_cast<size_t>(col)], rows[static_cast<size_t>(pivot)]);
            for (int r = 0; r < n; r++) {
                if (r != col && ((rows[static_cast<size_t>(r)] >> col) & 1)) {
                    rows[static_cast<size_t>(r)] ^= rows[static_cast<size_t>(col)];
                }
            }
        }
        if (ok) {
            break;
        }
    }
    // Invert A over GF(2) to fill the z block with (A^T)^-1.
    std::vector<uint64_t> rows = a;
    std::vector<uint64_t> inv(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        inv[static_cast<size_t>(i)] = uint64_t{1} << i;
    }
    for (int col = 0; col < n; col++) {
        int pivot = -1;
        for (int r = col; r < n; r++) {
            if ((rows[static_cast<size_t>(r)] >> col) & 1) {
                pivot = r;
                break;
            }
        }
        std::swap(rows[static_cast<size_t>(col)], rows[static_cast<size_t>(pivot)]);
        std::swap(inv[static_cast<size_t>(col)], inv[static_cast<size_t>(pivot)]);
        for (int r = 0; r < n; r++) {
            if (r != col && ((rows[static_cast<size_t>(r)] >> col) & 1)) {
                rows[static_cast<size_t>(r)] ^= rows[static_cast<size_t>(col)];
                inv[static_cast<size_t>(r)] ^= inv[static_cast<size_t>(col)];
            }
        }
    }
    BinarySymplectic m(n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            m.set(i, j, (a[static_cast<size_t>(i)] >> j) & 1);
            // (A^T)^-1 row i column j = (A^-1) row j column i.
            m.set(n + i, n + j, (inv[static_cast<size_t>(j)] >> i) & 1);
        }
    }
    if (!is_symplectic(m)) {
        throw Error("logical class construction failed");
    }
    return m;
}

/// XOR combination of `rows` equal to `rhs`, as a bit mask over row
/// indices, or nullopt when rhs lies outside the span.
std::optional<uint64_t> gf2_solve(std::vector<BitRow> rows, int width, BitRow rhs) {
    std::vector<uint64_t> combo(rows.size());
    for (size_t i = 0; i < rows.size(); i++) {
        combo[i] = uint64_t{1} << i;
    }
    size_t rank = 0;
    for (int col = 0; col < width && rank < rows.size(); col++) {
        size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].get(col)) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        std::swap(combo[rank], combo[pivot]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && rows[r].get(col)) {
                rows[r] ^= rows[rank];
                combo[r] ^= combo[rank];
            }
        }
        rank++;
    }
    uint64_t picked = 0;
    for (size_t r = 0; r < rank; r++) {
        int lead = -1;
        for (int col = 0; col < width; col++) {
            if (rows[r].get(col)) {
                lead = col;
                break;
            }
        }
        if (lead >= 0 && rhs.get(lead)) {
            rhs ^= rows[r];
            picked ^= combo[r];
        }
    }
    if (rhs.any()) {
        return std::nullopt;
    }
    return picked;
}

/// Stabilizer generators of the state reached from all-|down> through `t`:
/// g_q = -t(Z_q), since the preparation is stabilized by -Z_q.
std::vector<PauliOperator> state_stabilizers(const CliffordElement& t) {
    int n = t.n();
    std::vector<PauliOperator> gens;
    gens.reserve(static_cast<size_t>(n));
    for (int q = 0; q < n; q++) {
        const PauliOperator& img = t.image_z(q);
        gens.push_back(PauliOperator::from_bits(n, img.x_bits(), img.z_bits(),
                                                static_cast<uint8_t>(img.phase_exp() + 2)));
    }
    return gens;
}

PauliOperator combine_generators(const std::vector<PauliOperator>& gens, uint64_t picked, int n) {
    PauliOperator p = PauliOperator::identity(n);
    for (size_t i = 0; i < gens.size(); i++) {
        if ((picked >> i) & 1) {
            p = p * gens[i];
        }
    }
    return p;
}

std::string solve_basis_prediction(const CliffordElement& t) {
    int n = t.n();
    std::vector<PauliOperator> gens = state_stabilizers(t);
    std::vector<BitRow> rows;
    rows.reserve(gens.size());
    for (const PauliOperator& g : gens) {
        if (g.x_bits().any()) {
            throw Error("sequence outcome is not a deterministic basis state");
        }
        rows.push_back(g.z_bits());
    }
    std::string bits(static_cast<size_t>(n), '0');
    for (int q = 0; q < n; q++) {
        BitRow unit{};
        unit.set(q, true);
        auto picked = gf2_solve(rows, n, unit);
        if (!picked) {
            throw Error("stabilizer generators do not determine every qubit");
        }
        // The state is stabilized by s*Z_q: s = -1 means the prepared
        // -1 eigenstate ('0'), s = +1 the flipped state ('1').
        int s = combine_generators(gens, *picked, n).sign();
        bits[static_cast<size_t>(q)] = s < 0 ? '0' : '1';
    }
    return bits;
}

GateCircuit full_circuit(const BenchmarkSequence& seq) {
    GateCircuit c;
    for (const StepRecord& step : seq.steps) {
        append_pulse_gates(c, step.pulses);
        c.insert(c.end(), step.circuit.begin(), step.circuit.end());
        if (seq.interleaved) {
            c.insert(c.end(), seq.interleaved->begin(), seq.interleaved->end());
        }
    }
    append_pulse_gates(c, seq.final_step.pulses);
    c.insert(c.end(), seq.final_step.circuit.begin(), seq.final_step.circuit.end());
    return c;
}

/// Fills final_step.cls/.circuit and the prediction from the recorded
/// randomness (pulses and strategy draws), leaving the draws untouched.
void finish_sequence(BenchmarkSequence& seq) {
    int n = seq.n_qubits;
    FinalStepRecord& fin = seq.final_step;
    BinarySymplectic pre = pre_final_class(seq);
    switch (seq.strategy) {
        case FinalStepStrategy::FULL_INVERSE: {
            fin.cls = symplectic_inv(pre);
            fin.circuit = synthesize(fin.cls, n);
            break;
        }
        case FinalStepStrategy::RANDOM_LOGICAL: {
            if (!fin.logical_cls) {
                throw Error("missing logical draw for RANDOM_LOGICAL");
            }
            fin.cls = symplectic_mul(symplectic_inv(pre), *fin.logical_cls);
            fin.circuit = synthesize(fin.cls, n);
            break;
        }
        case FinalStepStrategy::RANDOM_JOINT_Z: {
            if (!fin.random_cls || fin.stabilizer_pick == 0 ||
                fin.local_signs.size() != static_cast<size_t>(n)) {
                throw Error("missing draws for RANDOM_JOINT_Z");
            }
            GateCircuit base = synthesize(*fin.random_cls, n);
            // Tableau up to the random Clifford; locals come after.
            fin.circuit = base;
            fin.cls = *fin.random_cls;
            CliffordElement t_mid = clifford_from_circuit(full_circuit(seq), n);
            std::vector<PauliOperator> gens = state_stabilizers(t_mid);
            PauliOperator star = combine_generators(gens, fin.stabilizer_pick, n);
            GateCircuit locals;
            for (int q = 0; q < n; q++) {
                bool x = star.x_bits().get(q);
                bool z = star.z_bits().get(q);
                if (x && !z) {
                    locals.push_back(Gate::ry(q, fin.local_signs[static_cast<size_t>(q)]));
                } else if (x && z) {
                    locals.push_back(Gate::rx(q, fin.local_signs[static_cast<size_t>(q)]));
                }
            }
            PauliOperator mapped = star;
            for (const Gate& g : locals) {
                mapped = conjugate_by_gate(g, mapped);
            }
            if (mapped.x_bits().any()) {
                throw Error("joint-Z localization failed");
            }
            fin.circuit.insert(fin.circuit.end(), locals.begin(), locals.end());
            fin.cls = symplectic_mul(fin.cls, circuit_class(locals, n));
            uint64_t mask = 0;
            for (int q = 0; q < n; q++) {
                if (mapped.z_bits().get(q)) {
                    mask |= uint64_t{1} << q;
                }
            }
            if (mask == 0) {
                throw Error("joint-Z mask is empty");
            }
            seq.prediction = OutcomePrediction{"", mask, mapped.sign()};
            return;
        }
    }
    CliffordElement t = clifford_from_circuit(full_circuit(seq), n);
    seq.prediction = OutcomePrediction{solve_basis_prediction(t), 0, 0};
}

}  // namespace

void validate_config(const BenchmarkConfig& config) {
    if (config.n_qubits < 1) {
        throw Error("n_qubits must be positive");
    }
    if (config.lengths.empty()) {
        throw Error("lengths must be nonempty");
    }
    int prev = 0;
    for (int l : config.lengths) {
        if (l <= prev) {
            throw Error("lengths must be strictly increasing and positive");
        }
        prev = l;
    }
    if (config.sequences_per_length.size() != config.lengths.size()) {
        throw Error("sequences_per_length must align with lengths");
    }
    for (int s : config.sequences_per_length) {
        if (s < 1) {
            throw Error("sequences_per_length entries must be positive");
        }
    }
    if (config.runs_per_sequence < 1) {
        throw Error("runs_per_sequence must be positive");
    }
    if (config.interleaved_gate) {
        validate_circuit(*config.interleaved_gate, config.n_qubits);
    }
}

StepRecord generate_step(int n, RandomStream& rng) {
    StepRecord step;
    step.pulses = draw_pulses(n, rng);
    step.cls = random_symplectic(n, rng);
    step.circuit = synthesize(step.cls, n);
    return step;
}

BenchmarkSequence generate_sequence(int l, const BenchmarkConfig& config, RandomStream& rng) {
    if (l < 1) {
        throw Error("sequence length must be at least 1");
    }
    int n = config.n_qubits;
    if (config.interleaved_gate) {
        validate_circuit(*config.interleaved_gate, n);
    }
    BenchmarkSequence seq;
    seq.n_qubits = n;
    seq.length = l;
    seq.strategy = config.final_strategy;
    seq.interleaved = config.interleaved_gate;
    seq.steps.reserve(static_cast<size_t>(l));
    for (int i = 0; i < l; i++) {
        seq.steps.push_back(generate_step(n, rng));
    }
    seq.final_step.pulses = draw_pulses(n, rng);
    switch (config.final_strategy) {
        case FinalStepStrategy::FULL_INVERSE:
            break;
        case FinalStepStrategy::RANDOM_LOGICAL:
            seq.final_step.logical_cls = random_logical_class(n, rng);
            break;
        case FinalStepStrategy::RANDOM_JOINT_Z: {
            seq.final_step.random_cls = random_symplectic(n, rng);
            uint64_t options = n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
            seq.final_step.stabilizer_pick = 1 + rng.uniform_below(options);
            seq.final_step.local_signs.reserve(static_cast<size_t>(n));
            for (int q = 0; q < n; q++) {
                seq.final_step.local_signs.push_back(rng.bernoulli(0.5) ? 1 : -1);
            }
            break;
        }
    }
    finish_sequence(seq);
    return seq;
}

BenchmarkSequence with_interleaved(const BenchmarkSequence& seq,
                                   const std::optional<GateCircuit>& gate) {
    if (gate) {
        validate_circuit(*gate, seq.n_qubits);
    }
    BenchmarkSequence out = seq;
    out.interleaved = gate;
    finish_sequence(out);
    return out;
}

BenchmarkSequence interleave(const BenchmarkSequence& seq, const GateCircuit& gate) {
    return with_interleaved(seq, gate);
}

BenchmarkSequence generate_one_qubit_sequence(int l, RandomStream& rng) {
    if (l < 1) {
        throw Error("sequence length must be at least 1");
    }
    BenchmarkSequence seq;
    seq.n_qubits = 1;
    seq.length = l;
    seq.strategy = FinalStepStrategy::FULL_INVERSE;
    seq.steps.reserve(static_cast<size_t>(l));
    for (int i = 0; i < l; i++) {
        StepRecord step;
        // Pauli step: x, y, z pi rotation or identity, equally likely.
        Axis axis = static_cast<Axis>(rng.uniform_below(4));
        step.pulses = {PauliPulse{axis, 1}};
        // Clifford step: five equiprobable options.
        switch (rng.uniform_below(5)) {
            case 0: break;
            case 1: step.circuit = {Gate::rx(0, 1)}; break;
            case 2: step.circuit = {Gate::rx(0, -1)}; break;
            case 3: step.circuit = {Gate::ry(0, 1)}; break;
            case 4: step.circuit = {Gate::ry(0, -1)}; break;
        }
        step.cls = circuit_class(step.circuit, 1);
        seq.steps.push_back(std::move(step));
    }
    Axis fin_axis = static_cast<Axis>(rng.uniform_below(4));
    seq.final_step.pulses = {PauliPulse{fin_axis, 1}};
    finish_sequence(seq);
    return seq;
}

std::vector<BenchmarkSequence> generate_set(const BenchmarkConfig& config, int jobs) {
    validate_config(config);
    std::vector<int> length_of_id;
    for (size_t i = 0; i < config.lengths.size(); i++) {
        for (int s = 0; s < config.sequences_per_length[i]; s++) {
            length_of_id.push_back(config.lengths[i]);
        }
    }
    size_t total = length_of_id.size();
    std::vector<std::optional<BenchmarkSequence>> slots(total);
    auto work = [&](size_t begin, size_t end) {
        for (size_t id = begin; id < end; id++) {
            RandomStream rng =
                RandomStream::derive(config.master_seed, rng_domain::kGenerate, id);
            BenchmarkSequence seq = generate_sequence(length_of_id[id], config, rng);
            seq.id = static_cast<int>(id);
            slots[id] = std::move(seq);
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
    std::vector<BenchmarkSequence> out;
    out.reserve(total);
    for (std::optional<BenchmarkSequence>& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

CliffordElement sequence_tableau(const BenchmarkSequence& seq) {
    return clifford_from_circuit(full_circuit(seq), seq.n_qubits);
}

OutcomePrediction predict_outcome(const BenchmarkSequence& seq) {
    CliffordElement t = sequence_tableau(seq);
    int n = seq.n_qubits;
    if (seq.strategy != FinalStepStrategy::RANDOM_JOINT_Z) {
        return OutcomePrediction{solve_basis_prediction(t), 0, 0};
    }
    if (seq.prediction.mask == 0) {
        throw Error("sequence lacks a joint-Z mask");
    }
    std::vector<PauliOperator> gens = state_stabilizers(t);
    std::vector<BitRow> rows;
    rows.reserve(gens.size());
    for (const PauliOperator& g : gens) {
        rows.push_back(g.class_row());
    }
    BitRow rhs{};
    for (int q = 0; q < n; q++) {
        if ((seq.prediction.mask >> q) & 1) {
            rhs.set(n + q, true);
        }
    }
    auto picked = gf2_solve(rows, 2 * n, rhs);
    if (!picked) {
        throw Error("joint-Z parity is not deterministic");
    }
    int parity = combine_generators(gens, *picked, n).sign();
    return OutcomePrediction{"", seq.prediction.mask, parity};
}

}  // namespace rbkit
