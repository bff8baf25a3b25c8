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

#include "rbkit/io.hpp"

#include <doctest.h>

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rbkit/analysis.hpp"
#include "rbkit/benchgen.hpp"
#include "rbkit/circuit.hpp"
#include "rbkit/error.hpp"
#include "rbkit/synth.hpp"

namespace rbkit {
namespace {

using ordered_json = nlohmann::ordered_json;

/// First hand-built frozen line: basis prediction, no interleaving.
BenchmarkSequence frozen_sequence_a() {
    BenchmarkSequence seq;
    seq.id = 7;
    seq.n_qubits = 2;
    seq.length = 1;
    seq.strategy = FinalStepStrategy::FULL_INVERSE;
    StepRecord step;
    step.pulses = {PauliPulse{Axis::X, 1}, PauliPulse{Axis::I, -1}};
    step.cls = BinarySymplectic::identity(2);
    step.circuit = {Gate::rx(0, 1), Gate::g(0, 1)};
    seq.steps.push_back(step);
    seq.final_step.pulses = {PauliPulse{Axis::Z, 1}, PauliPulse{Axis::Y, -1}};
    seq.final_step.cls = BinarySymplectic::identity(2);
    seq.final_step.circuit = {Gate::cnot(1, 0)};
    seq.prediction.bits = "10";
    return seq;
}

const char* kFrozenLineA =
    R"({"id":7,"n":2,"len":1,"steps":[{"pauli":["+X","-I"],)"
    R"("class":["1000","0100","0010","0001"],)"
    R"("circuit":[{"g":"RX","q":0,"t":1},{"g":"G","q":[0,1]}]}],)"
    R"("interleaved":null,"final":{"pauli":["+Z","-Y"],)"
    R"("class":["1000","0100","0010","0001"],)"
    R"("circuit":[{"g":"CNOT","q":[1,0]}],"strategy":"FULL_INVERSE"},)"
    R"("predict":"10"})";

/// Second hand-built frozen line: parity prediction, interleaved circuit,
/// recorded RANDOM_JOINT_Z draws.
BenchmarkSequence frozen_sequence_b() {
    BenchmarkSequence seq;
    seq.id = 3;
    seq.n_qubits = 2;
    seq.length = 1;
    seq.strategy = FinalStepStrategy::RANDOM_JOINT_Z;
    StepRecord step;
    step.pulses = {PauliPulse{}, PauliPulse{}};
    step.cls = BinarySymplectic::identity(2);
    seq.steps.push_back(step);
    seq.interleaved = GateCircuit{Gate::g(0, 1)};
    seq.final_step.pulses = {PauliPulse{}, PauliPulse{}};
    seq.final_step.cls = BinarySymplectic::identity(2);
    seq.final_step.circuit = {Gate::id(0)};
    seq.final_step.random_cls = BinarySymplectic::identity(2);
    seq.final_step.stabilizer_pick = 2;
    seq.final_step.local_signs = {1, -1};
    seq.prediction.mask = 1;
    seq.prediction.parity = -1;
    return seq;
}

const char* kFrozenLineB =
    R"({"id":3,"n":2,"len":1,"steps":[{"pauli":["+I","+I"],)"
    R"("class":["1000","0100","0010","0001"],"circuit":[]}],)"
    R"("interleaved":[{"g":"G","q":[0,1]}],"final":{"pauli":["+I","+I"],)"
    R"("class":["1000","0100","0010","0001"],"circuit":[{"g":"ID","q":0}],)"
    R"("strategy":"RANDOM_JOINT_Z",)"
    R"("random_class":["1000","0100","0010","0001"],)"
    R"("stabilizer_pick":2,"local_signs":[1,-1]},)"
    R"("predict":{"mask":"10","parity":-1}})";

/// Mutates a valid line through JSON and expects a ParseError on re-parse.
void expect_rejected(const std::string& line, void (*mutate)(ordered_json&)) {
    ordered_json j = ordered_json::parse(line);
    mutate(j);
    CHECK_THROWS_AS(sequence_from_json_line(j.dump()), ParseError);
}

std::vector<BenchmarkSequence> sample_sequences() {
    std::vector<BenchmarkSequence> all;
    uint64_t seed = 1;
    for (FinalStepStrategy strategy : {FinalStepStrategy::FULL_INVERSE,
                                       FinalStepStrategy::RANDOM_LOGICAL,
                                       FinalStepStrategy::RANDOM_JOINT_Z}) {
        for (int n = 1; n <= 3; n++) {
            BenchmarkConfig config;
            config.n_qubits = n;
            config.lengths = {1, 3};
            config.sequences_per_length = {2, 2};
            config.final_strategy = strategy;
            config.master_seed = seed++;
            for (BenchmarkSequence& seq : generate_set(config)) {
                GateCircuit gate =
                    n > 1 ? GateCircuit{Gate::g(0, 1)} : GateCircuit{Gate::rx(0, 1)};
                all.push_back(interleave(seq, gate));
                all.push_back(std::move(seq));
            }
        }
    }
    RandomStream rng(99);
    all.push_back(generate_one_qubit_sequence(4, rng));
    return all;
}

double model_mean(int n, int l, double eps_g, double eps_m) {
    double dim = std::pow(2.0, n);
    double c = dim / (dim - 1.0);
    double floor = 1.0 / dim;
    return floor + (1.0 - floor) * (1.0 - c * eps_m) * std::pow(1.0 - c * eps_g, l);
}

std::vector<LengthPoint> model_points(int n, double eps_g, double eps_m) {
    std::vector<LengthPoint> points;
    for (int l = 1; l <= 8; l++) {
        LengthPoint pt;
        pt.length = l;
        pt.mean_fidelity = model_mean(n, l, eps_g, eps_m);
        pt.sem = 0.01;
        pt.n_sequences = 10;
        points.push_back(pt);
    }
    return points;
}

TEST_SUITE_BEGIN("io");

TEST_CASE("frozen sequence lines are stable byte for byte") {
    CHECK(sequence_to_json_line(frozen_sequence_a()) == kFrozenLineA);
    CHECK(sequence_to_json_line(frozen_sequence_b()) == kFrozenLineB);

    // Parsing the frozen text reproduces it exactly.
    CHECK(sequence_to_json_line(sequence_from_json_line(kFrozenLineA)) == kFrozenLineA);
    CHECK(sequence_to_json_line(sequence_from_json_line(kFrozenLineB)) == kFrozenLineB);

    BenchmarkSequence b = sequence_from_json_line(kFrozenLineB);
    CHECK(b.prediction.is_parity());
    CHECK(b.prediction.mask == 1);
    CHECK(b.prediction.parity == -1);
    CHECK(b.final_step.stabilizer_pick == 2);
    CHECK(b.final_step.local_signs == std::vector<int>{1, -1});
    REQUIRE(b.interleaved.has_value());
    CHECK(serialize_circuit(*b.interleaved) == serialize_circuit({Gate::g(0, 1)}));

    CHECK(prediction_to_json(frozen_sequence_a().prediction, 2) == R"("10")");
    CHECK(prediction_to_json(b.prediction, 2) == R"({"mask":"10","parity":-1})");
}

TEST_CASE("generated sequences round-trip with semantics intact") {
    for (const BenchmarkSequence& seq : sample_sequences()) {
        std::string line = sequence_to_json_line(seq);
        BenchmarkSequence parsed = sequence_from_json_line(line);
        CHECK(sequence_to_json_line(parsed) == line);
        CHECK(parsed.prediction == seq.prediction);
        // The parsed structure still predicts its own outcome.
        CHECK(predict_outcome(parsed) == seq.prediction);
        // Recorded final-step draws survive: re-interleaving a parsed bare
        // sequence rebuilds the same twin as re-interleaving the original.
        if (!seq.interleaved) {
            GateCircuit gate = seq.n_qubits > 1 ? GateCircuit{Gate::g(0, 1)}
                                               : GateCircuit{Gate::ry(0, -1)};
            CHECK(sequence_to_json_line(interleave(parsed, gate)) ==
                  sequence_to_json_line(interleave(seq, gate)));
        }
    }
}

TEST_CASE("sequence streams tolerate blank lines and CRLF") {
    std::vector<BenchmarkSequence> all = sample_sequences();
    std::ostringstream out;
    write_sequences(out, all);

    std::istringstream in(out.str());
    std::vector<BenchmarkSequence> back = read_sequences(in);
    REQUIRE(back.size() == all.size());
    for (size_t i = 0; i < all.size(); i++) {
        CHECK(sequence_to_json_line(back[i]) == sequence_to_json_line(all[i]));
    }

    std::string crlf;
    crlf += std::string(kFrozenLineA) + "\r\n";
    crlf += "\r\n";
    crlf += std::string(kFrozenLineB) + "\r\n";
    std::istringstream in2(crlf);
    std::vector<BenchmarkSequence> two = read_sequences(in2);
    REQUIRE(two.size() == 2);
    CHECK(sequence_to_json_line(two[0]) == kFrozenLineA);
    CHECK(sequence_to_json_line(two[1]) == kFrozenLineB);
}

TEST_CASE("sequence parse errors carry 1-based line numbers") {
    std::string text = std::string(kFrozenLineA) + "\n\n{not json\n";
    std::istringstream in(text);
    try {
        read_sequences(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("malformed sequences are rejected") {
    // Rejects anything it does not understand rather than guessing.
    expect_rejected(kFrozenLineA, [](ordered_json& j) { j["extra"] = 1; });
    expect_rejected(kFrozenLineA, [](ordered_json& j) { j.erase("final"); });
    expect_rejected(kFrozenLineA, [](ordered_json& j) { j.erase("interleaved"); });
    expect_rejected(kFrozenLineA, [](ordered_json& j) { j["n"] = 0; });
    expect_rejected(kFrozenLineA, [](ordered_json& j) { j["len"] = 2; });
    expect_rejected(kFrozenLineA,
                    [](ordered_json& j) { j["steps"][0]["pauli"] = {"+X"}; });
    expect_rejected(kFrozenLineA,
                    [](ordered_json& j) { j["steps"][0]["pauli"][0] = "X"; });
    expect_rejected(kFrozenLineA,
                    [](ordered_json& j) { j["steps"][0]["class"] = {"10", "01"}; });
    expect_rejected(kFrozenLineA, [](ordered_json& j) {
        j["steps"][0]["circuit"][0] = {{"g", "RX"}, {"q", 0}};
    });
    expect_rejected(kFrozenLineA, [](ordered_json& j) {
        j["steps"][0]["circuit"][0] = {{"g", "XX"}, {"q", 0}, {"t", 1}};
    });
    expect_rejected(kFrozenLineA, [](ordered_json& j) {
        j["steps"][0]["circuit"][0] = {{"g", "PAULI"}, {"q", 0}, {"axis", "X"}, {"sign", 2}};
    });
    expect_rejected(kFrozenLineA, [](ordered_json& j) {
        // Gate touches a qubit outside the register.
        j["steps"][0]["circuit"][0] = {{"g", "RX"}, {"q", 5}, {"t", 1}};
    });
    expect_rejected(kFrozenLineA, [](ordered_json& j) { j["predict"] = "1"; });
    expect_rejected(kFrozenLineA, [](ordered_json& j) { j["predict"] = "12"; });
    expect_rejected(kFrozenLineA,
                    [](ordered_json& j) { j["final"]["strategy"] = "SOMETIMES"; });
    expect_rejected(kFrozenLineA, [](ordered_json& j) { j["final"].erase("strategy"); });

    expect_rejected(kFrozenLineB,
                    [](ordered_json& j) { j["predict"]["mask"] = "00"; });
    expect_rejected(kFrozenLineB,
                    [](ordered_json& j) { j["predict"]["parity"] = 0; });
    expect_rejected(kFrozenLineB,
                    [](ordered_json& j) { j["final"]["local_signs"] = {1}; });
    expect_rejected(kFrozenLineB,
                    [](ordered_json& j) { j["final"]["local_signs"] = {1, 2}; });
    expect_rejected(kFrozenLineB,
                    [](ordered_json& j) { j["final"].erase("stabilizer_pick"); });

    CHECK_THROWS_AS(sequence_from_json_line("{truncated"), ParseError);
    CHECK_THROWS_AS(sequence_from_json_line(""), ParseError);
}

TEST_CASE("results CSV is byte-exact and strict") {
    ResultsFile results;
    results.base.push_back(RunRecord{0, 1, 100, 97});
    results.base.push_back(RunRecord{1, 2, 100, 88});
    results.interleaved.push_back(RunRecord{0, 1, 100, 95});

    std::ostringstream out;
    write_results_csv(out, results);
    std::string expected =
        "set,length,seq_id,runs,successes\n"
        "base,1,0,100,97\n"
        "base,2,1,100,88\n"
        "interleaved,1,0,100,95\n";
    CHECK(out.str() == expected);

    std::istringstream in(expected);
    ResultsFile back = read_results_csv(in);
    REQUIRE(back.base.size() == 2);
    REQUIRE(back.interleaved.size() == 1);
    CHECK(back.base[0].sequence_id == 0);
    CHECK(back.base[0].length == 1);
    CHECK(back.base[0].runs == 100);
    CHECK(back.base[0].successes == 97);
    CHECK(back.base[1].successes == 88);
    CHECK(back.interleaved[0].successes == 95);

    std::ostringstream again;
    write_results_csv(again, back);
    CHECK(again.str() == expected);

    // CRLF and interior blank lines are tolerated.
    std::istringstream crlf(
        "set,length,seq_id,runs,successes\r\n\r\nbase,1,0,100,97\r\n");
    CHECK(read_results_csv(crlf).base.size() == 1);

    auto reject = [](const std::string& text, size_t line) {
        std::istringstream bad(text);
        try {
            read_results_csv(bad);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    reject("", 1);
    reject("set,length,seqid,runs,successes\nbase,1,0,100,97\n", 1);
    reject("set,length,seq_id,runs,successes\nbase,1,0,100\n", 2);
    reject("set,length,seq_id,runs,successes\nbase,1,0,100,97,9\n", 2);
    reject("set,length,seq_id,runs,successes\nbase,1,0,100,97\nbase,1,1,0,0\n", 3);
    reject("set,length,seq_id,runs,successes\nbase,1,0,100,101\n", 2);
    reject("set,length,seq_id,runs,successes\nbase,1,0,100,-1\n", 2);
    reject("set,length,seq_id,runs,successes\nbase,1,0,10x,9\n", 2);
    reject("set,length,seq_id,runs,successes\nbase,1,0,,9\n", 2);
    reject("set,length,seq_id,runs,successes\nboth,1,0,100,97\n", 2);
}

TEST_CASE("noise JSON round-trips and rejects unknown keys") {
    NoiseModel noise;
    noise.step_depol = 0.01;
    noise.prep_meas_error = 0.02;
    noise.interleaved_gate_depol = 0.003;
    noise.per_gate_depol[GateKind::RX] = 0.002;
    noise.per_gate_depol[GateKind::G] = 0.004;
    noise.readout_flip = 0.05;
    noise.coherent_overrotation = 0.1;

    std::string text = noise_to_json(noise);
    CHECK(text ==
          R"({"step_depol":0.01,"prep_meas_error":0.02,"interleaved_gate_depol":0.003,)"
          R"("per_gate_depol":{"RX":0.002,"G":0.004},"readout_flip":0.05,)"
          R"("coherent_overrotation":0.1})");

    NoiseModel back = noise_from_json(text);
    CHECK(noise_to_json(back) == text);
    CHECK(back.per_gate_depol.at(GateKind::G) == 0.004);
    CHECK(back.coherent_overrotation == 0.1);

    // Missing fields default to zero; unknown fields are fatal.
    NoiseModel empty = noise_from_json("{}");
    CHECK(empty.step_depol == 0.0);
    CHECK(empty.per_gate_depol.empty());
    CHECK_THROWS_AS(noise_from_json(R"({"step_depol":0.01,"step_depool":0.02})"), ParseError);
    CHECK_THROWS_AS(noise_from_json(R"({"per_gate_depol":{"XX":0.01}})"), ParseError);
    CHECK_THROWS_AS(noise_from_json(R"({"per_gate_depol":[0.01]})"), ParseError);
    CHECK_THROWS_AS(noise_from_json("not json"), ParseError);
}

TEST_CASE("config JSON round-trips including 64-bit seeds") {
    BenchmarkConfig config;
    config.n_qubits = 2;
    config.lengths = {1, 2};
    config.sequences_per_length = {3, 3};
    config.runs_per_sequence = 100;
    config.final_strategy = FinalStepStrategy::FULL_INVERSE;
    config.master_seed = 42;

    std::string text = config_to_json(config);
    CHECK(text ==
          R"({"n":2,"lengths":[1,2],"sequences_per_length":[3,3],"runs":100,)"
          R"("strategy":"FULL_INVERSE","interleaved":null,"seed":42})");
    BenchmarkConfig back = config_from_json(text);
    CHECK(config_to_json(back) == text);

    // Seeds above 2^63 survive the trip untouched.
    config.master_seed = 0x8000000000000005ull;
    config.interleaved_gate = GateCircuit{Gate::g(0, 1)};
    config.final_strategy = FinalStepStrategy::RANDOM_JOINT_Z;
    back = config_from_json(config_to_json(config));
    CHECK(back.master_seed == 0x8000000000000005ull);
    CHECK(back.final_strategy == FinalStepStrategy::RANDOM_JOINT_Z);
    REQUIRE(back.interleaved_gate.has_value());
    CHECK(serialize_circuit(*back.interleaved_gate) == serialize_circuit({Gate::g(0, 1)}));
    CHECK(config_to_json(back) == config_to_json(config));

    CHECK_THROWS_AS(config_from_json(R"({"n":2})"), ParseError);
    CHECK_THROWS_AS(
        config_from_json(
            R"({"n":2,"lengths":[1],"runs":1,"strategy":"FULL_INVERSE","seed":0,"jobs":2})"),
        ParseError);
}

TEST_CASE("circuit JSON covers every gate kind") {
    GateCircuit circuit = {Gate::rx(1, -1), Gate::pauli(0, Axis::Y, -1), Gate::id(1),
                           Gate::g(1, 0), Gate::cnot(0, 1)};
    std::string text = circuit_to_json(circuit);
    CHECK(text ==
          R"([{"g":"RX","q":1,"t":-1},{"g":"PAULI","q":0,"axis":"Y","sign":-1},)"
          R"({"g":"ID","q":1},{"g":"G","q":[0,1]},{"g":"CNOT","q":[0,1]}])");
    CHECK(serialize_circuit(circuit_from_json(text)) == serialize_circuit(circuit));
    CHECK_THROWS_AS(circuit_from_json(R"([{"g":"G","q":[0]}])"), ParseError);
    CHECK_THROWS_AS(circuit_from_json(R"([{"g":"G","q":[0,0]}])"), ParseError);
    CHECK_THROWS_AS(circuit_from_json(R"({"g":"ID","q":0})"), ParseError);
}

TEST_CASE("two-qubit table export lists all 720 classes") {
    const SynthesisTable2Q& table = shared_table_2q(TwoQubitGate::G);
    std::ostringstream out;
    write_table_jsonl(out, table);

    std::istringstream in(out.str());
    std::string line;
    std::set<std::string> seen;
    int total = 0;
    int lines = 0;
    std::vector<int> histogram;
    while (std::getline(in, line)) {
        lines++;
        ordered_json j = ordered_json::parse(line);
        REQUIRE(j.size() == 3);
        auto it = j.begin();
        CHECK(it.key() == "class");
        CHECK((++it).key() == "g_count");
        CHECK((++it).key() == "circuit");

        std::string packed;
        for (const ordered_json& row : j["class"]) {
            std::string s = row.get<std::string>();
            CHECK(s.size() == 4);
            packed += s;
        }
        CHECK(j["class"].size() == 4);
        seen.insert(packed);

        int g_count = j["g_count"].get<int>();
        total += g_count;
        if (static_cast<size_t>(g_count) >= histogram.size()) {
            histogram.resize(static_cast<size_t>(g_count) + 1, 0);
        }
        histogram[static_cast<size_t>(g_count)]++;

        // The declared cost matches the witness circuit.
        GateCircuit circuit = circuit_from_json(j["circuit"].dump());
        int two_qubit = 0;
        for (const Gate& gate : circuit) {
            if (gate.is_two_qubit()) {
                CHECK(gate.kind == GateKind::G);
                two_qubit++;
            }
        }
        CHECK(two_qubit == g_count);
    }
    CHECK(lines == 720);
    CHECK(seen.size() == 720);
    CHECK(total == 1080);  // mean cost 3/2 over the 720 classes
    CHECK(histogram == table.cost_histogram());
}

TEST_CASE("report JSON shape") {
    DecayFit base = fit_decay(model_points(2, 0.162, 0.086), 2);
    double forward = forward_interleaved_eps(0.162, 0.069, 2);
    DecayFit inter = fit_decay(model_points(2, forward, 0.086), 2);

    Report report;
    report.base = base;
    report.interleaved = inter;
    report.epg = extract_epg(base, inter);
    report.windows = {LengthWindow{1, 8}};
    report.window_results = {base};

    ordered_json j = ordered_json::parse(report_to_json(report));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    CHECK(keys == std::vector<std::string>{"n", "eps_g", "se_eps_g", "eps_m", "se_eps_m",
                                           "eps_G", "se_eps_G", "chi2", "dof", "p",
                                           "interleaved", "windows", "warnings"});
    CHECK(j["n"].get<int>() == 2);
    CHECK(j["eps_g"].get<double>() == base.eps_g);
    CHECK(j["se_eps_g"].get<double>() == base.se_eps_g);
    CHECK(j["eps_G"].get<double>() == report.epg->eps_G);
    CHECK(j["dof"].get<int>() == base.dof);
    CHECK(j["p"].get<double>() == base.p_value);
    CHECK(j["interleaved"]["eps_g"].get<double>() == inter.eps_g);
    REQUIRE(j["windows"].size() == 1);
    CHECK(j["windows"][0]["min_length"].get<int>() == 1);
    CHECK(j["windows"][0]["max_length"].get<int>() == 8);
    CHECK(j["windows"][0]["eps_g"].get<double>() == base.eps_g);
    CHECK(j["warnings"].is_array());

    // Without an interleaved arm the gate-error slots stay null.
    Report bare;
    bare.base = base;
    ordered_json jb = ordered_json::parse(report_to_json(bare));
    CHECK(jb["eps_G"].is_null());
    CHECK(jb["se_eps_G"].is_null());
    CHECK(!jb.contains("interleaved"));
    CHECK(jb["windows"].empty());

    Report broken;
    broken.base = base;
    broken.windows = {LengthWindow{1, 4}};
    CHECK_THROWS_AS(report_to_json(broken), Error);
}

TEST_CASE("plot CSV is frozen") {
    DecayFit flat;
    flat.n_qubits = 2;
    flat.success_floor = 0.25;
    flat.eps_g = 0.0;
    flat.eps_m = 0.0;

    LengthPoint p1;
    p1.length = 1;
    p1.mean_fidelity = 0.875;
    p1.sem = 0.0125;
    LengthPoint p2;
    p2.length = 10;
    p2.mean_fidelity = 1.0 / 3.0;
    p2.sem = 0.0;

    std::ostringstream out;
    write_plot_csv(out, {p1, p2}, flat);
    CHECK(out.str() ==
          "length,mean,sem,fitted\n"
          "1,0.875,0.0125,1\n"
          "10,0.3333333333,0,1\n");
}

TEST_CASE("manifest round-trips") {
    BenchmarkConfig config;
    config.n_qubits = 2;
    config.lengths = {1, 2, 3};
    config.sequences_per_length = {5, 5, 5};
    config.master_seed = 17;

    NoiseModel noise;
    noise.step_depol = 0.05;

    RunManifest manifest;
    manifest.created = current_utc_timestamp();
    manifest.config = config;
    manifest.noise = noise;
    manifest.files["sequences"] = "out/sequences.jsonl";
    manifest.files["results"] = "out/results.csv";

    CHECK(manifest.artifact_version == std::string("0.1.0"));
    CHECK(manifest.artifact_version == kArtifactVersion);

    std::string text = manifest_to_json(manifest);
    RunManifest back = manifest_from_json(text);
    CHECK(manifest_to_json(back) == text);
    CHECK(back.artifact_version == kArtifactVersion);
    CHECK(back.created == manifest.created);
    CHECK(config_to_json(back.config) == config_to_json(config));
    REQUIRE(back.noise.has_value());
    CHECK(noise_to_json(*back.noise) == noise_to_json(noise));
    CHECK(back.files.at("sequences") == "out/sequences.jsonl");
    CHECK(back.files.at("results") == "out/results.csv");

    // Timestamps look like 2026-01-07T12:34:56Z.
    const std::string& ts = manifest.created;
    REQUIRE(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[7] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts[13] == ':');
    CHECK(ts[16] == ':');
    CHECK(ts[19] == 'Z');
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u}) {
        CHECK(std::isdigit(static_cast<unsigned char>(ts[i])) != 0);
    }

    RunManifest bare;
    bare.config = config;
    RunManifest bare_back = manifest_from_json(manifest_to_json(bare));
    CHECK(!bare_back.noise.has_value());
    CHECK(bare_back.files.empty());

    CHECK_THROWS_AS(manifest_from_json(R"({"artifact_version":"0.1.0"})"), ParseError);
    CHECK_THROWS_AS(manifest_from_json("{]"), ParseError);
}

TEST_SUITE_END();

}  // namespace
}  // namespace rbkit
