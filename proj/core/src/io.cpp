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

#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "rbkit/error.hpp"

namespace rbkit {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Converts any parse-stage exception into a line-tagged ParseError.
template <typename F>
auto parse_guarded(size_t line_number, F&& body) {
    try {
        return body();
    } catch (const ParseError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), line_number);
    } catch (const Error& e) {
        throw ParseError(e.what(), line_number);
    } catch (const std::exception& e) {
        throw ParseError(e.what(), line_number);
    }
}

void check_keys(const ordered_json& j, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw Error("unknown key '" + it.key() + "'");
        }
    }
}

const ordered_json& need(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw Error(std::string("missing key '") + key + "'");
    }
    return *it;
}

// ---- enum names ----

const char* kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::PAULI: return "PAULI";
        case GateKind::ID: return "ID";
        case GateKind::G: return "G";
        case GateKind::CNOT: return "CNOT";
    }
    throw Error("unknown gate kind");
}

GateKind kind_from_name(const std::string& name) {
    for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::PAULI,
                          GateKind::ID, GateKind::G, GateKind::CNOT}) {
        if (name == kind_name(kind)) {
            return kind;
        }
    }
    throw Error("unknown gate name '" + name + "'");
}

char axis_letter(Axis a) {
    switch (a) {
        case Axis::I: return 'I';
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    throw Error("unknown axis");
}

Axis axis_from_letter(char ch) {
    switch (ch) {
        case 'I': return Axis::I;
        case 'X': return Axis::X;
        case 'Y': return Axis::Y;
        case 'Z': return Axis::Z;
        default: break;
    }
    throw Error(std::string("unknown axis letter '") + ch + "'");
}

const char* strategy_name(FinalStepStrategy s) {
    switch (s) {
        case FinalStepStrategy::FULL_INVERSE: return "FULL_INVERSE";
        case FinalStepStrategy::RANDOM_LOGICAL: return "RANDOM_LOGICAL";
        case FinalStepStrategy::RANDOM_JOINT_Z: return "RANDOM_JOINT_Z";
    }
    throw Error("unknown final-step strategy");
}

FinalStepStrategy strategy_from_name(const std::string& name) {
    for (FinalStepStrategy s : {FinalStepStrategy::FULL_INVERSE,
                                FinalStepStrategy::RANDOM_LOGICAL,
                                FinalStepStrategy::RANDOM_JOINT_Z}) {
        if (name == strategy_name(s)) {
            return s;
        }
    }
    throw Error("unknown strategy '" + name + "'");
}

// ---- gates and circuits ----

ordered_json gate_json(const Gate& g) {
    ordered_json j;
    j["g"] = kind_name(g.kind);
    if (g.is_two_qubit()) {
        j["q"] = ordered_json::array({g.q0, g.q1});
    } else {
        j["q"] = g.q0;
    }
    switch (g.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            j["t"] = g.turns;
            break;
        case GateKind::PAULI:
            j["axis"] = std::string(1, axis_letter(g.axis));
            j["sign"] = g.sign;
            break;
        default:
            break;
    }
    return j;
}

int qubit_index(const ordered_json& j) {
    int q = j.get<int>();
    if (q < 0) {
        throw Error("qubit index must be nonnegative");
    }
    return q;
}

Gate gate_from(const ordered_json& j) {
    GateKind kind = kind_from_name(need(j, "g").get<std::string>());
    const ordered_json& q = need(j, "q");
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ: {
            check_keys(j, {"g", "q", "t"});
            int turns = need(j, "t").get<int>();
            int qubit = qubit_index(q);
            if (kind == GateKind::RX) return Gate::rx(qubit, turns);
            if (kind == GateKind::RY) return Gate::ry(qubit, turns);
            return Gate::rz(qubit, turns);
        }
        case GateKind::PAULI: {
            check_keys(j, {"g", "q", "axis", "sign"});
            std::string axis = need(j, "axis").get<std::string>();
            if (axis.size() != 1) {
                throw Error("axis must be a single letter");
            }
            int sign = need(j, "sign").get<int>();
            if (sign != 1 && sign != -1) {
                throw Error("sign must be +1 or -1");
            }
            return Gate::pauli(qubit_index(q), axis_from_letter(axis[0]), sign);
        }
        case GateKind::ID:
            check_keys(j, {"g", "q"});
            return Gate::id(qubit_index(q));
        case GateKind::G:
        case GateKind::CNOT: {
            check_keys(j, {"g", "q"});
            if (!q.is_array() || q.size() != 2) {
                throw Error("two-qubit gate needs q = [a, b]");
            }
            int a = qubit_index(q[0]);
            int b = qubit_index(q[1]);
            if (a == b) {
                throw Error("two-qubit gate needs two distinct qubits");
            }
            return kind == GateKind::G ? Gate::g(a, b) : Gate::cnot(a, b);
        }
    }
    throw Error("unknown gate kind");
}

ordered_json circuit_json(const GateCircuit& circuit) {
    ordered_json arr = ordered_json::array();
    for (const Gate& g : circuit) {
        arr.push_back(gate_json(g));
    }
    return arr;
}

GateCircuit circuit_from(const ordered_json& j) {
    if (!j.is_array()) {
        throw Error("circuit must be an array of gate records");
    }
    GateCircuit out;
    out.reserve(j.size());
    for (const ordered_json& g : j) {
        out.push_back(gate_from(g));
    }
    return out;
}

// ---- pulses, classes, predictions ----

ordered_json pulses_json(const std::vector<PauliPulse>& pulses) {
    ordered_json arr = ordered_json::array();
    for (const PauliPulse& p : pulses) {
        std::string s;
        s += p.sign > 0 ? '+' : '-';
        s += axis_letter(p.axis);
        arr.push_back(s);
    }
    return arr;
}

std::vector<PauliPulse> pulses_from(const ordered_json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw Error("pauli pulse list must have one entry per qubit");
    }
    std::vector<PauliPulse> out;
    out.reserve(j.size());
    for (const ordered_json& e : j) {
        std::string s = e.get<std::string>();
        if (s.size() != 2 || (s[0] != '+' && s[0] != '-')) {
            throw Error("pulse must look like \"+X\" or \"-I\"");
        }
        out.push_back(PauliPulse{axis_from_letter(s[1]), s[0] == '+' ? 1 : -1});
    }
    return out;
}

ordered_json class_json(const BinarySymplectic& m) {
    ordered_json arr = ordered_json::array();
    for (const std::string& row : m.to_row_strings()) {
        arr.push_back(row);
    }
    return arr;
}

BinarySymplectic class_from(const ordered_json& j, int n) {
    if (!j.is_array()) {
        throw Error("class must be an array of row strings");
    }
    std::vector<std::string> rows;
    rows.reserve(j.size());
    for (const ordered_json& r : j) {
        rows.push_back(r.get<std::string>());
    }
    BinarySymplectic m = BinarySymplectic::from_row_strings(rows);
    if (m.n() != n) {
        throw Error("class dimension does not match the sequence");
    }
    return m;
}

ordered_json prediction_json(const OutcomePrediction& p, int n) {
    if (!p.is_parity()) {
        return ordered_json(p.bits);
    }
    std::string mask;
    for (int q = 0; q < n; q++) {
        mask += ((p.mask >> q) & 1) != 0 ? '1' : '0';
    }
    ordered_json j;
    j["mask"] = mask;
    j["parity"] = p.parity;
    return j;
}

OutcomePrediction prediction_from(const ordered_json& j, int n) {
    OutcomePrediction p;
    if (j.is_string()) {
        p.bits = j.get<std::string>();
        if (static_cast<int>(p.bits.size()) != n) {
            throw Error("predicted bit string must have one character per qubit");
        }
        for (char ch : p.bits) {
            if (ch != '0' && ch != '1') {
                throw Error("predicted bits must be 0 or 1");
            }
        }
        return p;
    }
    check_keys(j, {"mask", "parity"});
    std::string mask = need(j, "mask").get<std::string>();
    if (static_cast<int>(mask.size()) != n) {
        throw Error("mask must have one character per qubit");
    }
    for (int q = 0; q < n; q++) {
        if (mask[static_cast<size_t>(q)] == '1') {
            p.mask |= uint64_t{1} << q;
        } else if (mask[static_cast<size_t>(q)] != '0') {
            throw Error("mask characters must be 0 or 1");
        }
    }
    if (p.mask == 0) {
        throw Error("parity mask must cover at least one qubit");
    }
    p.parity = need(j, "parity").get<int>();
    if (p.parity != 1 && p.parity != -1) {
        throw Error("parity must be +1 or -1");
    }
    return p;
}

// ---- steps ----

ordered_json step_json(const StepRecord& step) {
    ordered_json j;
    j["pauli"] = pulses_json(step.pulses);
    j["class"] = class_json(step.cls);
    j["circuit"] = circuit_json(step.circuit);
    return j;
}

StepRecord step_from(const ordered_json& j, int n) {
    check_keys(j, {"pauli", "class", "circuit"});
    StepRecord step{pulses_from(need(j, "pauli"), n), class_from(need(j, "class"), n),
                    circuit_from(need(j, "circuit"))};
    validate_circuit(step.circuit, n);
    return step;
}

ordered_json final_json(const BenchmarkSequence& seq) {
    const FinalStepRecord& fin = seq.final_step;
    ordered_json j;
    j["pauli"] = pulses_json(fin.pulses);
    j["class"] = class_json(fin.cls);
    j["circuit"] = circuit_json(fin.circuit);
    j["strategy"] = strategy_name(seq.strategy);
    if (fin.logical_cls) {
        j["logical_class"] = class_json(*fin.logical_cls);
    }
    if (fin.random_cls) {
        j["random_class"] = class_json(*fin.random_cls);
    }
    if (seq.strategy == FinalStepStrategy::RANDOM_JOINT_Z) {
        j["stabilizer_pick"] = fin.stabilizer_pick;
        ordered_json signs = ordered_json::array();
        for (int s : fin.local_signs) {
            signs.push_back(s);
        }
        j["local_signs"] = signs;
    }
    return j;
}

void final_from(const ordered_json& j, int n, BenchmarkSequence& seq) {
    check_keys(j, {"pauli", "class", "circuit", "strategy", "logical_class", "random_class",
                   "stabilizer_pick", "local_signs"});
    FinalStepRecord& fin = seq.final_step;
    fin.pulses = pulses_from(need(j, "pauli"), n);
    fin.cls = class_from(need(j, "class"), n);
    fin.circuit = circuit_from(need(j, "circuit"));
    validate_circuit(fin.circuit, n);
    seq.strategy = strategy_from_name(need(j, "strategy").get<std::string>());
    if (j.contains("logical_class")) {
        fin.logical_cls = class_from(j.at("logical_class"), n);
    }
    if (j.contains("random_class")) {
        fin.random_cls = class_from(j.at("random_class"), n);
    }
    if (seq.strategy == FinalStepStrategy::RANDOM_JOINT_Z) {
        fin.stabilizer_pick = need(j, "stabilizer_pick").get<uint64_t>();
        const ordered_json& signs = need(j, "local_signs");
        if (!signs.is_array() || static_cast<int>(signs.size()) != n) {
            throw Error("local_signs must have one entry per qubit");
        }
        for (const ordered_json& s : signs) {
            int v = s.get<int>();
            if (v != 1 && v != -1) {
                throw Error("local sign must be +1 or -1");
            }
            fin.local_signs.push_back(v);
        }
    }
}

}  // namespace

std::string sequence_to_json_line(const BenchmarkSequence& seq) {
    ordered_json j;
    j["id"] = seq.id;
    j["n"] = seq.n_qubits;
    j["len"] = seq.length;
    ordered_json steps = ordered_json::array();
    for (const StepRecord& step : seq.steps) {
        steps.push_back(step_json(step));
    }
    j["steps"] = steps;
    j["interleaved"] = seq.interleaved ? circuit_json(*seq.interleaved) : ordered_json(nullptr);
    j["final"] = final_json(seq);
    j["predict"] = prediction_json(seq.prediction, seq.n_qubits);
    return j.dump();
}

BenchmarkSequence sequence_from_json_line(const std::string& line, size_t line_number) {
    return parse_guarded(line_number, [&] {
        ordered_json j = ordered_json::parse(line);
        check_keys(j, {"id", "n", "len", "steps", "interleaved", "final", "predict"});
        BenchmarkSequence seq;
        seq.id = need(j, "id").get<int>();
        seq.n_qubits = need(j, "n").get<int>();
        if (seq.n_qubits < 1) {
            throw Error("sequence needs at least one qubit");
        }
        seq.length = need(j, "len").get<int>();
        const ordered_json& steps = need(j, "steps");
        if (!steps.is_array()) {
            throw Error("steps must be an array");
        }
        if (static_cast<int>(steps.size()) != seq.length) {
            throw Error("len does not match the number of steps");
        }
        for (const ordered_json& s : steps) {
            seq.steps.push_back(step_from(s, seq.n_qubits));
        }
        const ordered_json& inter = need(j, "interleaved");
        if (!inter.is_null()) {
            GateCircuit circuit = circuit_from(inter);
            validate_circuit(circuit, seq.n_qubits);
            seq.interleaved = std::move(circuit);
        }
        final_from(need(j, "final"), seq.n_qubits, seq);
        seq.prediction = prediction_from(need(j, "predict"), seq.n_qubits);
        return seq;
    });
}

std::string prediction_to_json(const OutcomePrediction& prediction, int n) {
    return prediction_json(prediction, n).dump();
}

void write_sequences(std::ostream& out, const std::vector<BenchmarkSequence>& sequences) {
    for (const BenchmarkSequence& seq : sequences) {
        out << sequence_to_json_line(seq) << '\n';
    }
}

std::vector<BenchmarkSequence> read_sequences(std::istream& in) {
    std::vector<BenchmarkSequence> out;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        line_number++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        out.push_back(sequence_from_json_line(line, line_number));
    }
    return out;
}

namespace {

int parse_int_field(const std::string& field, size_t line_number) {
    return parse_guarded(line_number, [&] {
        size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(field, &pos);
        } catch (const std::exception&) {
            throw Error("expected an integer, got '" + field + "'");
        }
        if (pos != field.size()) {
            throw Error("trailing characters in integer field '" + field + "'");
        }
        return value;
    });
}

}  // namespace

void write_results_csv(std::ostream& out, const ResultsFile& results) {
    out << "set,length,seq_id,runs,successes\n";
    for (const RunRecord& r : results.base) {
        out << "base," << r.length << ',' << r.sequence_id << ',' << r.runs << ','
            << r.successes << '\n';
    }
    for (const RunRecord& r : results.interleaved) {
        out << "interleaved," << r.length << ',' << r.sequence_id << ',' << r.runs << ','
            << r.successes << '\n';
    }
}

ResultsFile read_results_csv(std::istream& in) {
    ResultsFile out;
    std::string line;
    size_t line_number = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        line_number++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (!saw_header) {
            if (line != "set,length,seq_id,runs,successes") {
                throw ParseError("expected header 'set,length,seq_id,runs,successes'",
                                 line_number);
            }
            saw_header = true;
            continue;
        }
        std::vector<std::string> fields;
        size_t start = 0;
        while (true) {
            size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (fields.size() != 5) {
            throw ParseError("expected 5 comma-separated fields", line_number);
        }
        RunRecord rec;
        rec.length = parse_int_field(fields[1], line_number);
        rec.sequence_id = parse_int_field(fields[2], line_number);
        rec.runs = parse_int_field(fields[3], line_number);
        rec.successes = parse_int_field(fields[4], line_number);
        if (rec.runs < 1 || rec.successes < 0 || rec.successes > rec.runs) {
            throw ParseError("successes must lie in [0, runs] with runs >= 1", line_number);
        }
        if (fields[0] == "base") {
            out.base.push_back(rec);
        } else if (fields[0] == "interleaved") {
            out.interleaved.push_back(rec);
        } else {
            throw ParseError("set must be 'base' or 'interleaved', got '" + fields[0] + "'",
                             line_number);
        }
    }
    if (!saw_header) {
        throw ParseError("empty results file", 1);
    }
    return out;
}

namespace {

ordered_json noise_json_obj(const NoiseModel& noise) {
    ordered_json j;
    j["step_depol"] = noise.step_depol;
    j["prep_meas_error"] = noise.prep_meas_error;
    j["interleaved_gate_depol"] = noise.interleaved_gate_depol;
    ordered_json per_gate = ordered_json::object();
    for (const auto& [kind, eps] : noise.per_gate_depol) {
        per_gate[kind_name(kind)] = eps;
    }
    j["per_gate_depol"] = std::move(per_gate);
    j["readout_flip"] = noise.readout_flip;
    j["coherent_overrotation"] = noise.coherent_overrotation;
    return j;
}

NoiseModel noise_from_obj(const ordered_json& j) {
    check_keys(j, {"step_depol", "prep_meas_error", "interleaved_gate_depol", "per_gate_depol",
                   "readout_flip", "coherent_overrotation"});
    NoiseModel noise;
    if (j.contains("step_depol")) {
        noise.step_depol = j.at("step_depol").get<double>();
    }
    if (j.contains("prep_meas_error")) {
        noise.prep_meas_error = j.at("prep_meas_error").get<double>();
    }
    if (j.contains("interleaved_gate_depol")) {
        noise.interleaved_gate_depol = j.at("interleaved_gate_depol").get<double>();
    }
    if (j.contains("per_gate_depol")) {
        const ordered_json& per_gate = j.at("per_gate_depol");
        if (!per_gate.is_object()) {
            throw Error("per_gate_depol must be an object of gate -> error");
        }
        for (auto it = per_gate.begin(); it != per_gate.end(); ++it) {
            noise.per_gate_depol[kind_from_name(it.key())] = it.value().get<double>();
        }
    }
    if (j.contains("readout_flip")) {
        noise.readout_flip = j.at("readout_flip").get<double>();
    }
    if (j.contains("coherent_overrotation")) {
        noise.coherent_overrotation = j.at("coherent_overrotation").get<double>();
    }
    return noise;
}

ordered_json config_json_obj(const BenchmarkConfig& config) {
    ordered_json j;
    j["n"] = config.n_qubits;
    j["lengths"] = config.lengths;
    j["sequences_per_length"] = config.sequences_per_length;
    j["runs"] = config.runs_per_sequence;
    j["strategy"] = strategy_name(config.final_strategy);
    j["interleaved"] =
        config.interleaved_gate ? circuit_json(*config.interleaved_gate) : ordered_json(nullptr);
    j["seed"] = config.master_seed;
    return j;
}

BenchmarkConfig config_from_obj(const ordered_json& j) {
    check_keys(j, {"n", "lengths", "sequences_per_length", "runs", "strategy", "interleaved",
                   "seed"});
    BenchmarkConfig config;
    config.n_qubits = need(j, "n").get<int>();
    config.lengths = need(j, "lengths").get<std::vector<int>>();
    if (j.contains("sequences_per_length")) {
        config.sequences_per_length = j.at("sequences_per_length").get<std::vector<int>>();
    }
    config.runs_per_sequence = need(j, "runs").get<int>();
    config.final_strategy = strategy_from_name(need(j, "strategy").get<std::string>());
    if (j.contains("interleaved") && !j.at("interleaved").is_null()) {
        GateCircuit circuit = circuit_from(j.at("interleaved"));
        validate_circuit(circuit, config.n_qubits);
        config.interleaved_gate = std::move(circuit);
    }
    config.master_seed = need(j, "seed").get<uint64_t>();
    return config;
}

}  // namespace

std::string noise_to_json(const NoiseModel& noise) { return noise_json_obj(noise).dump(); }

NoiseModel noise_from_json(const std::string& text) {
    return parse_guarded(0, [&] { return noise_from_obj(ordered_json::parse(text)); });
}

std::string config_to_json(const BenchmarkConfig& config) {
    return config_json_obj(config).dump();
}

BenchmarkConfig config_from_json(const std::string& text) {
    return parse_guarded(0, [&] { return config_from_obj(ordered_json::parse(text)); });
}

std::string circuit_to_json(const GateCircuit& circuit) { return circuit_json(circuit).dump(); }

GateCircuit circuit_from_json(const std::string& text) {
    return parse_guarded(0, [&] { return circuit_from(ordered_json::parse(text)); });
}

void write_table_jsonl(std::ostream& out, const SynthesisTable2Q& table) {
    for (const SynthEntry& entry : table.entries()) {
        ordered_json j;
        j["class"] = class_json(entry.cls);
        j["g_count"] = entry.two_qubit_count;
        j["circuit"] = circuit_json(entry.circuit);
        out << j.dump() << '\n';
    }
}

namespace {

ordered_json fit_json_obj(const DecayFit& fit) {
    ordered_json j;
    j["eps_g"] = fit.eps_g;
    j["se_eps_g"] = fit.se_eps_g;
    j["eps_m"] = fit.eps_m;
    j["se_eps_m"] = fit.se_eps_m;
    j["chi2"] = fit.chi2;
    j["dof"] = fit.dof;
    j["p"] = fit.p_value;
    j["warnings"] = fit.warnings;
    return j;
}

}  // namespace

std::string report_to_json(const Report& report) {
    if (report.windows.size() != report.window_results.size()) {
        throw Error("window list and window fits differ in length");
    }
    ordered_json j;
    j["n"] = report.base.n_qubits;
    j["eps_g"] = report.base.eps_g;
    j["se_eps_g"] = report.base.se_eps_g;
    j["eps_m"] = report.base.eps_m;
    j["se_eps_m"] = report.base.se_eps_m;
    if (report.epg) {
        j["eps_G"] = report.epg->eps_G;
        j["se_eps_G"] = report.epg->se_eps_G;
    } else {
        j["eps_G"] = nullptr;
        j["se_eps_G"] = nullptr;
    }
    j["chi2"] = report.base.chi2;
    j["dof"] = report.base.dof;
    j["p"] = report.base.p_value;
    if (report.interleaved) {
        j["interleaved"] = fit_json_obj(*report.interleaved);
    }
    ordered_json windows = ordered_json::array();
    for (size_t i = 0; i < report.windows.size(); i++) {
        ordered_json w = fit_json_obj(report.window_results[i]);
        ordered_json entry;
        entry["min_length"] = report.windows[i].min_length;
        entry["max_length"] = report.windows[i].max_length;
        for (auto it = w.begin(); it != w.end(); ++it) {
            entry[it.key()] = it.value();
        }
        windows.push_back(std::move(entry));
    }
    j["windows"] = std::move(windows);
    j["warnings"] = report.base.warnings;
    return j.dump();
}

void write_plot_csv(std::ostream& out, const std::vector<LengthPoint>& points,
                    const DecayFit& fit) {
    out << "length,mean,sem,fitted\n";
    char buf[96];
    for (const LengthPoint& pt : points) {
        std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%.10g", pt.length, pt.mean_fidelity,
                      pt.sem, fit.evaluate(pt.length));
        out << buf << '\n';
    }
}

std::string current_utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string manifest_to_json(const RunManifest& manifest) {
    ordered_json j;
    j["artifact_version"] = manifest.artifact_version;
    j["created"] = manifest.created;
    j["config"] = config_json_obj(manifest.config);
    j["noise"] = manifest.noise ? noise_json_obj(*manifest.noise) : ordered_json(nullptr);
    ordered_json files = ordered_json::object();
    for (const auto& [role, path] : manifest.files) {
        files[role] = path;
    }
    j["files"] = std::move(files);
    return j.dump();
}

RunManifest manifest_from_json(const std::string& text) {
    return parse_guarded(0, [&] {
        ordered_json j = ordered_json::parse(text);
        check_keys(j, {"artifact_version", "created", "config", "noise", "files"});
        RunManifest manifest;
        manifest.artifact_version = need(j, "artifact_version").get<std::string>();
        if (j.contains("created")) {
            manifest.created = j.at("created").get<std::string>();
        }
        manifest.config = config_from_obj(need(j, "config"));
        if (j.contains("noise") && !j.at("noise").is_null()) {
            manifest.noise = noise_from_obj(j.at("noise"));
        }
        if (j.contains("files")) {
            const ordered_json& files = j.at("files");
            if (!files.is_object()) {
                throw Error("files must be an object of role -> path");
            }
            for (auto it = files.begin(); it != files.end(); ++it) {
                manifest.files[it.key()] = it.value().get<std::string>();
            }
        }
        return manifest;
    });
}

}  // namespace rbkit
