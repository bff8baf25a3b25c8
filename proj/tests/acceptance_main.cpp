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

// Acceptance gate: ten end-to-end criteria, each printed as one PASS/FAIL
// line with the measured values and the stated tolerance. Exit code is
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "dense_reference.hpp"
#include "rbkit/analysis.hpp"
#include "rbkit/benchgen.hpp"
#include "rbkit/clifford.hpp"
#include "rbkit/error.hpp"
#include "rbkit/pauli.hpp"
#include "rbkit/rng.hpp"
#include "rbkit/sim.hpp"
#include "rbkit/symplectic.hpp"
#include "rbkit/synth.hpp"

namespace {

using namespace rbkit;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

// ---- AC-1: symplectic group counts with time limits ----

Outcome ac1() {
    auto t_small = Clock::now();
    size_t c1 = enumerate_symplectic(1).size();
    size_t c2 = enumerate_symplectic(2).size();
    double small_s = seconds_since(t_small);

    auto t3 = Clock::now();
    size_t c3 = 0;
    for_each_symplectic(3, [&](const BinarySymplectic&) { c3++; });
    double big_s = seconds_since(t3);

    Outcome out;
    out.pass = c1 == 6 && c2 == 720 && c3 == 1451520 && small_s < 1.0 && big_s < 60.0;
    out.detail = "class counts " + std::to_string(c1) + "/" + std::to_string(c2) + "/" +
                 std::to_string(c3) + " (want 6/720/1451520); n<=2 in " + fmt(small_s, 2) +
                 " s (<1), n=3 in " + fmt(big_s, 2) + " s (<60)";
    return out;
}

// ---- AC-2: exact mean two-qubit costs at n = 2 ----

Outcome ac2() {
    auto t0 = Clock::now();
    SynthesisTable2Q table = build_table_2q(TwoQubitGate::G);
    Rational g_mean = table.mean_two_qubit_count();
    int g_total = table.total_two_qubit_count();
    Rational cnot_mean = avg_two_qubit_cost(2, TwoQubitGate::CNOT);
    double elapsed = seconds_since(t0);

    Outcome out;
    out.pass = table.entries().size() == 720 && g_mean == make_rational(3, 2) &&
               g_total == 1080 && cnot_mean == make_rational(3, 2) && elapsed < 60.0;
    out.detail = "G metric mean " + std::to_string(g_mean.num) + "/" +
                 std::to_string(g_mean.den) + " total " + std::to_string(g_total) +
                 " over " + std::to_string(table.entries().size()) +
                 " classes; CNOT metric C(2) = " + std::to_string(cnot_mean.num) + "/" +
                 std::to_string(cnot_mean.den) + " (want 3/2, 1080, 720, 3/2) in " +
                 fmt(elapsed, 2) + " s (<60)";
    return out;
}

// ---- AC-3: C(3) rounds to 3.51 ----

Outcome ac3() {
    auto t0 = Clock::now();
    Rational c3 = avg_two_qubit_cost(3, TwoQubitGate::CNOT);
    double elapsed = seconds_since(t0);
    double rounded = std::round(c3.value() * 100.0) / 100.0;

    Outcome out;
    out.pass = std::abs(rounded - 3.51) < 1e-12;
    out.detail = "C(3) = " + std::to_string(c3.num) + "/" + std::to_string(c3.den) + " = " +
                 fmt(c3.value(), 7) + ", rounds to " + fmt(rounded, 3) + " (want 3.51) in " +
                 fmt(elapsed, 2) + " s";
    return out;
}

// ---- AC-4: noiseless runs always match the prediction ----

Outcome ac4() {
    auto t0 = Clock::now();
    const NoiseModel quiet;
    constexpr int kRuns = 5;
    int sequences = 0;
    int bad_runs = 0;
    RandomStream rng(4242);
    for (FinalStepStrategy strategy : {FinalStepStrategy::FULL_INVERSE,
                                       FinalStepStrategy::RANDOM_LOGICAL,
                                       FinalStepStrategy::RANDOM_JOINT_Z}) {
        BenchmarkConfig config;
        config.n_qubits = 2;
        config.lengths = {1, 2, 3, 4, 5, 6};
        config.sequences_per_length = {34, 34, 33, 33, 33, 33};  // 200 per strategy
        config.final_strategy = strategy;
        config.master_seed = 1000 + static_cast<uint64_t>(strategy);
        for (const BenchmarkSequence& seq : generate_set(config)) {
            sequences++;
            RunRecord stab = simulate_stabilizer(seq, quiet, kRuns, rng);
            bad_runs += kRuns - stab.successes;
            SimResult dense = simulate_dense(seq, quiet, kRuns, rng);
            bad_runs += kRuns - dense.record.successes;
        }
    }
    double elapsed = seconds_since(t0);

    Outcome out;
    out.pass = bad_runs == 0 && sequences == 600 && elapsed < 60.0;
    out.detail = std::to_string(sequences) + " noiseless sequences (200 per strategy) x " +
                 std::to_string(kRuns) + " runs x 2 engines: " + std::to_string(bad_runs) +
                 " runs disagreed with the prediction (want 0) in " + fmt(elapsed, 2) +
                 " s (<60)";
    return out;
}

// ---- AC-5: closed-loop recovery of injected error rates ----

Outcome ac5() {
    auto t0 = Clock::now();
    BenchmarkConfig config;
    config.n_qubits = 2;
    config.lengths = {1, 2, 3, 4, 5, 6};
    config.sequences_per_length.assign(6, 50);
    config.runs_per_sequence = 100;
    config.interleaved_gate = GateCircuit{Gate::g(0, 1)};
    config.master_seed = 20260825;

    NoiseModel noise;
    noise.step_depol = 0.162;
    noise.prep_meas_error = 0.086;
    noise.interleaved_gate_depol = 0.069;

    BenchmarkResult bench = run_benchmark(config, noise, 4);
    DecayFit base = fit_decay(aggregate(bench.base_records), 2);
    DecayFit inter = fit_decay(aggregate(bench.interleaved_records), 2);
    EPGResult epg = extract_epg(base, inter);

    BootstrapSpec spec;
    spec.n_qubits = 2;
    spec.resamples = 1000;
    spec.master_seed = config.master_seed;
    spec.jobs = 4;
    BootstrapResult boot_base = bootstrap_fit(bench.base_records, spec);
    BootstrapResult boot_inter = bootstrap_fit(bench.interleaved_records, spec);
    double se_G = paired_epg_se(boot_base, boot_inter);
    double elapsed = seconds_since(t0);

    double dev_g = std::abs(base.eps_g - 0.162);
    double dev_G = std::abs(epg.eps_G - 0.069);
    bool g_ok = dev_g <= 3.0 * boot_base.se_eps_g;
    bool G_ok = dev_G <= 3.0 * se_G;
    bool se_ok = boot_base.se_eps_g >= 0.004 && boot_base.se_eps_g <= 0.016;

    Outcome out;
    out.pass = g_ok && G_ok && se_ok && elapsed < 300.0;
    out.detail = "eps_g " + fmt(base.eps_g) + " off 0.162 by " + fmt(dev_g, 3) +
                 " (<= 3 SE = " + fmt(3.0 * boot_base.se_eps_g, 3) + "); eps_G " +
                 fmt(epg.eps_G) + " off 0.069 by " + fmt(dev_G, 3) + " (<= 3 SE = " +
                 fmt(3.0 * se_G, 3) + "); bootstrap SE(eps_g) " + fmt(boot_base.se_eps_g, 3) +
                 " in [0.004, 0.016]; " + fmt(elapsed, 2) + " s (<300)";
    return out;
}

// ---- AC-6: chi-square tail value ----

Outcome ac6() {
    double p = chi_square_pvalue(9.48, 4);
    Outcome out;
    out.pass = std::abs(p - 0.0501) <= 0.0002;
    out.detail = "chi_square_pvalue(9.48, 4) = " + fmt(p, 6) + " (want 0.0501 +/- 0.0002)";
    return out;
}

// ---- AC-7: interleaved extraction round-trip ----

Outcome ac7() {
    double max_err = 0.0;
    for (int i = 0; i <= 6; i++) {
        for (int j = 0; j <= 6; j++) {
            double eps_g = 0.05 * i;
            double eps_G = 0.05 * j;
            double forward = forward_interleaved_eps(eps_g, eps_G, 2);
            DecayFit base;
            base.n_qubits = 2;
            base.eps_g = eps_g;
            DecayFit inter;
            inter.n_qubits = 2;
            inter.eps_g = forward;
            EPGResult epg = extract_epg(base, inter);
            max_err = std::max(max_err, std::abs(epg.eps_G - eps_G));
        }
    }
    double forward_ref = forward_interleaved_eps(0.162, 0.069, 2);

    Outcome out;
    out.pass = max_err < 1e-12 && std::abs(forward_ref - 0.216096) < 1e-9;
    out.detail = "7x7 grid round-trip max error " + fmt(max_err, 3) +
                 " (<1e-12); forward(0.162, 0.069) = " + fmt(forward_ref, 6) +
                 " (want 0.216096)";
    return out;
}

// ---- AC-8: one-qubit protocol pulse costs ----

Outcome ac8() {
    // Analytic means over the documented option sets. The Clifford step is
    // uniform over {Rx(+-pi/2), Ry(+-pi/2), identity}: four one-pulse options
    // and one free one. The Pauli step is uniform over {x, y, z pi rotations,
    // identity}: x/y cost two effective quarter pulses, z is a frame update.
    double clifford_mean = (1.0 + 1.0 + 1.0 + 1.0 + 0.0) / 5.0;
    double step_mean = clifford_mean + (2.0 + 2.0 + 0.0 + 0.0) / 4.0;

    // The generator must realize those distributions.
    RandomStream rng(31);
    long steps = 0;
    long pulse_sum = 0;
    long effective_sum = 0;
    for (int i = 0; i < 20000; i++) {
        BenchmarkSequence seq = generate_one_qubit_sequence(5, rng);
        for (const StepRecord& step : seq.steps) {
            int xy = 0;
            for (const Gate& g : step.circuit) {
                if (g.kind == GateKind::RX || g.kind == GateKind::RY) {
                    xy += std::abs(g.turns);
                }
            }
            int effective = xy;
            Axis axis = step.pulses[0].axis;
            if (axis == Axis::X || axis == Axis::Y) {
                effective += 2;
            }
            steps++;
            pulse_sum += xy;
            effective_sum += effective;
        }
    }
    double measured_clifford = static_cast<double>(pulse_sum) / static_cast<double>(steps);
    double measured_step = static_cast<double>(effective_sum) / static_cast<double>(steps);
    // Option-set variances: 0.16 for the Clifford draw, plus 1.0 for the
    // independent Pauli draw; five-sigma bands on 100k steps.
    double tol_clifford = 5.0 * std::sqrt(0.16 / static_cast<double>(steps));
    double tol_step = 5.0 * std::sqrt(1.16 / static_cast<double>(steps));

    Outcome out;
    out.pass = clifford_mean == 0.8 && step_mean == 1.8 &&
               std::abs(measured_clifford - 0.8) < tol_clifford &&
               std::abs(measured_step - 1.8) < tol_step;
    out.detail = "analytic 0.8 half-pi pulses per Clifford step and 1.8 effective per full "
                 "step; generator measured " +
                 fmt(measured_clifford) + " and " + fmt(measured_step) + " over " +
                 std::to_string(steps) + " steps (5-sigma bands " + fmt(tol_clifford, 2) +
                 ", " + fmt(tol_step, 2) + ")";
    return out;
}

// ---- AC-9: group-law suite ----

GateCircuit random_clifford_circuit(int n, int len, RandomStream& rng) {
    static const int kTurns[4] = {-2, -1, 1, 2};
    static const Axis kAxes[4] = {Axis::I, Axis::X, Axis::Y, Axis::Z};
    GateCircuit circuit;
    for (int i = 0; i < len; i++) {
        int q = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(n)));
        uint64_t pick = rng.uniform_below(n > 1 ? 7 : 5);
        switch (pick) {
            case 0:
                circuit.push_back(Gate::rx(q, kTurns[rng.uniform_below(4)]));
                break;
            case 1:
                circuit.push_back(Gate::ry(q, kTurns[rng.uniform_below(4)]));
                break;
            case 2:
                circuit.push_back(Gate::rz(q, kTurns[rng.uniform_below(4)]));
                break;
            case 3:
                circuit.push_back(Gate::pauli(q, kAxes[rng.uniform_below(4)],
                                              rng.bernoulli(0.5) ? 1 : -1));
                break;
            case 4:
                circuit.push_back(Gate::id(q));
                break;
            default: {
                int r = static_cast<int>(rng.uniform_below(static_cast<uint64_t>(n - 1)));
                int other = (q + 1 + r) % n;
                circuit.push_back(pick == 5 ? Gate::g(q, other) : Gate::cnot(q, other));
                break;
            }
        }
    }
    return circuit;
}

Outcome ac9() {
    RandomStream rng(77);

    int assoc_fail = 0;
    for (int i = 0; i < 1000; i++) {
        int n = 1 + i % 4;
        BinarySymplectic a = random_symplectic_direct(n, rng);
        BinarySymplectic b = random_symplectic_direct(n, rng);
        BinarySymplectic c = random_symplectic_direct(n, rng);
        if (symplectic_mul(symplectic_mul(a, b), c) !=
            symplectic_mul(a, symplectic_mul(b, c))) {
            assoc_fail++;
        }
    }

    int conj_fail = 0;
    for (int k = 0; k < 500; k++) {
        int n = 1 + (k & 1);
        int dim = 1 << n;
        GateCircuit circuit = random_clifford_circuit(n, 8, rng);
        testref::Mat u = testref::dense_circuit(circuit, n);
        CliffordElement tableau = clifford_from_circuit(circuit, n);
        for (uint64_t xb = 0; xb < (uint64_t{1} << n); xb++) {
            for (uint64_t zb = 0; zb < (uint64_t{1} << n); zb++) {
                PauliOperator p =
                    PauliOperator::from_bits_hermitian(n, BitRow{xb, 0}, BitRow{zb, 0}, 1);
                testref::Mat lhs = testref::dense_conjugate(u, testref::dense_pauli(p), dim);
                testref::Mat rhs = testref::dense_pauli(tableau.conjugate(p));
                if (!testref::mat_equal(lhs, rhs, 1e-9)) {
                    conj_fail++;
                }
            }
        }
    }

    // Every Pauli-pulse tableau must sit in the quotient kernel.
    int kernel_fail = 0;
    long kernel_total = 0;
    for (int n = 1; n <= 3; n++) {
        long options = 1;
        for (int q = 0; q < n; q++) {
            options *= 8;
        }
        for (long code = 0; code < options; code++) {
            GateCircuit circuit;
            long rest = code;
            for (int q = 0; q < n; q++) {
                int local = static_cast<int>(rest % 8);
                rest /= 8;
                static const Axis kAxes[4] = {Axis::I, Axis::X, Axis::Y, Axis::Z};
                circuit.push_back(
                    Gate::pauli(q, kAxes[local % 4], local < 4 ? 1 : -1));
            }
            kernel_total++;
            if (clifford_class(clifford_from_circuit(circuit, n)) !=
                BinarySymplectic::identity(n)) {
                kernel_fail++;
            }
        }
    }

    Outcome out;
    out.pass = assoc_fail == 0 && conj_fail == 0 && kernel_fail == 0;
    out.detail = "1000 associativity triples (" + std::to_string(assoc_fail) +
                 " failed); 500 circuits x all Paulis tableau-vs-dense (" +
                 std::to_string(conj_fail) + " failed); " + std::to_string(kernel_total) +
                 " Pauli tableaus in the kernel (" + std::to_string(kernel_fail) + " failed)";
    return out;
}

// ---- AC-10: dense engine matches the depolarizing product closed form ----

double depol_prob(double eps, int n) {
    double dim = std::pow(2.0, n);
    return eps * dim / (dim - 1.0);
}

Outcome ac10() {
    NoiseModel noise;
    noise.step_depol = 0.162;
    noise.prep_meas_error = 0.086;
    noise.interleaved_gate_depol = 0.069;

    double max_diff = 0.0;
    int checked = 0;
    for (int n = 1; n <= 3; n++) {
        double dim = std::pow(2.0, n);
        double d_g = depol_prob(noise.step_depol, n);
        double d_m = depol_prob(noise.prep_meas_error, n);
        double d_i = depol_prob(noise.interleaved_gate_depol, n);
        for (FinalStepStrategy strategy : {FinalStepStrategy::FULL_INVERSE,
                                           FinalStepStrategy::RANDOM_LOGICAL,
                                           FinalStepStrategy::RANDOM_JOINT_Z}) {
            BenchmarkConfig config;
            config.n_qubits = n;
            config.lengths = {1, 2, 3, 4, 5, 6};
            config.sequences_per_length.assign(6, 2);
            config.final_strategy = strategy;
            config.master_seed = 99 + static_cast<uint64_t>(n);
            for (const BenchmarkSequence& seq : generate_set(config)) {
                bool parity = seq.prediction.is_parity();
                double survive = (1.0 - d_m) * std::pow(1.0 - d_g, seq.length);
                double model = parity ? 0.5 + 0.5 * survive
                                      : 1.0 / dim + (1.0 - 1.0 / dim) * survive;
                double exact = dense_success_probability(seq, noise);
                max_diff = std::max(max_diff, std::abs(exact - model));
                checked++;
                if (n > 1 && strategy == FinalStepStrategy::FULL_INVERSE) {
                    BenchmarkSequence twin = interleave(seq, {Gate::g(0, 1)});
                    double twin_survive =
                        survive * std::pow(1.0 - d_i, twin.length);
                    double twin_model = 1.0 / dim + (1.0 - 1.0 / dim) * twin_survive;
                    double twin_exact = dense_success_probability(twin, noise);
                    max_diff = std::max(max_diff, std::abs(twin_exact - twin_model));
                    checked++;
                }
            }
        }
    }

    Outcome out;
    out.pass = max_diff < 1e-10;
    out.detail = std::to_string(checked) +
                 " sequences (n = 1..3, all strategies, l <= 6): max |exact - model| = " +
                 fmt(max_diff, 3) + " (<1e-10)";
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", ac4}, {"AC-5", ac5},
        {"AC-6", ac6}, {"AC-7", ac7}, {"AC-8", ac8}, {"AC-9", ac9}, {"AC-10", ac10},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        std::printf("%-5s %s  %s\n", criterion.id, outcome.pass ? "PASS" : "FAIL",
                    outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) {
            failed++;
        }
    }
    std::printf("acceptance: %d/10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
