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

// rb: command line front end for the rbkit randomized benchmarking library.
//
// Every subcommand is deterministic given --seed: all randomness flows from
// that one flag through per-sequence derived streams, so --jobs N never
// changes any output byte. Errors leave a machine-readable JSON object on
// stderr and a nonzero exit code.

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rbkit/analysis.hpp"
#include "rbkit/benchgen.hpp"
#include "rbkit/circuit.hpp"
#include "rbkit/error.hpp"
#include "rbkit/io.hpp"
#include "rbkit/rng.hpp"
#include "rbkit/sim.hpp"
#include "rbkit/symplectic.hpp"
#include "rbkit/synth.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace rbkit;

// ---- plumbing ----

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    return out;
}

/// Writes to the file at `path`, or to stdout when `path` is empty.
void emit_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
    } else {
        open_output(path) << text;
    }
}

/// Runs work(first, last) over contiguous chunks on up to `jobs` threads.
/// The split never affects results: every unit of work is index-addressed.
void run_chunked(int jobs, size_t count, const std::function<void(size_t, size_t)>& work) {
    size_t workers = std::min<size_t>(std::max(jobs, 1), count);
    if (workers <= 1) {
        work(0, count);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    size_t chunk = (count + workers - 1) / workers;
    for (size_t w = 0; w < workers; w++) {
        size_t first = w * chunk;
        size_t last = std::min(count, first + chunk);
        threads.emplace_back([&, w, first, last] {
            try {
                work(first, last);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) {
        t.join();
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

FinalStepStrategy strategy_from_flag(const std::string& name) {
    if (name == "FULL_INVERSE") return FinalStepStrategy::FULL_INVERSE;
    if (name == "RANDOM_LOGICAL") return FinalStepStrategy::RANDOM_LOGICAL;
    if (name == "RANDOM_JOINT_Z") return FinalStepStrategy::RANDOM_JOINT_Z;
    throw Error("unknown strategy '" + name + "'");
}

TwoQubitGate metric_from_flag(const std::string& name) {
    if (name == "G") return TwoQubitGate::G;
    if (name == "CNOT") return TwoQubitGate::CNOT;
    throw Error("unknown metric '" + name + "'");
}

/// --interleaved accepts a gate-record JSON array or the shorthands G and
/// CNOT for the canonical two-qubit gate on qubits 0,1.
GateCircuit parse_interleaved_flag(const std::string& text, int n) {
    GateCircuit circuit;
    if (text == "G") {
        circuit = {Gate::g(0, 1)};
    } else if (text == "CNOT") {
        circuit = {Gate::cnot(0, 1)};
    } else {
        circuit = circuit_from_json(text);
    }
    validate_circuit(circuit, n);
    return circuit;
}

// ---- shared config flags (mirror BenchmarkConfig 1:1) ----

struct ConfigFlags {
    int n = 2;
    std::vector<int> lengths = {1, 2, 3, 4, 5, 6};
    std::vector<int> sequences_per_length = {50};
    int runs = 100;
    std::string strategy = "FULL_INVERSE";
    std::string interleaved;
    uint64_t seed = 0;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
    cmd->add_option("--n", f.n, "Number of qubits")->capture_default_str();
    cmd->add_option("--lengths", f.lengths, "Sequence lengths, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--sequences-per-length", f.sequences_per_length,
                    "Random sequences per length; one value broadcasts to all lengths")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--runs", f.runs, "Simulated repetitions per sequence")
        ->capture_default_str();
    cmd->add_option("--strategy", f.strategy, "Final measurement step strategy")
        ->check(CLI::IsMember({"FULL_INVERSE", "RANDOM_LOGICAL", "RANDOM_JOINT_Z"}))
        ->capture_default_str();
    cmd->add_option("--interleaved", f.interleaved,
                    "Interleaved gate circuit (JSON array, or G / CNOT shorthand)");
    cmd->add_option("--seed", f.seed, "Master seed; sole source of randomness")
        ->capture_default_str();
}

BenchmarkConfig build_config(const ConfigFlags& f) {
    BenchmarkConfig config;
    config.n_qubits = f.n;
    config.lengths = f.lengths;
    if (f.sequences_per_length.size() == 1 && f.lengths.size() > 1) {
        config.sequences_per_length.assign(f.lengths.size(), f.sequences_per_length[0]);
    } else {
        config.sequences_per_length = f.sequences_per_length;
    }
    config.runs_per_sequence = f.runs;
    config.final_strategy = strategy_from_flag(f.strategy);
    if (!f.interleaved.empty()) {
        config.interleaved_gate = parse_interleaved_flag(f.interleaved, f.n);
    }
    config.master_seed = f.seed;
    return config;
}

// ---- gen ----

struct GenOpts {
    ConfigFlags cfg;
    std::string out;
    std::string out_interleaved;
    std::string manifest_out;
    std::string from_manifest;
    int jobs = 1;
};

std::string derive_interleaved_path(const std::string& base_path) {
    size_t dot = base_path.rfind('.');
    size_t slash = base_path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return base_path + ".interleaved";
    }
    return base_path.substr(0, dot) + ".interleaved" + base_path.substr(dot);
}

void write_manifest_file(const std::string& path, const BenchmarkConfig& config,
                         const std::optional<NoiseModel>& noise,
                         const std::map<std::string, std::string>& files) {
    RunManifest manifest;
    manifest.created = current_utc_timestamp();
    manifest.config = config;
    manifest.noise = noise;
    manifest.files = files;
    open_output(path) << manifest_to_json(manifest) << '\n';
}

void run_gen(const GenOpts& opts) {
    BenchmarkConfig config;
    std::map<std::string, std::string> prior_files;
    if (!opts.from_manifest.empty()) {
        RunManifest manifest = manifest_from_json(read_text_file(opts.from_manifest));
        config = manifest.config;
        prior_files = manifest.files;
    } else {
        config = build_config(opts.cfg);
    }
    validate_config(config);

    std::string out = opts.out;
    if (out.empty() && prior_files.count("sequences")) {
        out = prior_files.at("sequences");
    }
    if (out.empty()) {
        throw Error("gen needs --out (or a manifest that records a sequences path)");
    }

    BenchmarkConfig bare = config;
    bare.interleaved_gate.reset();
    std::vector<BenchmarkSequence> base = generate_set(bare, opts.jobs);
    {
        std::ofstream f = open_output(out);
        write_sequences(f, base);
    }
    std::map<std::string, std::string> files{{"sequences", out}};

    if (config.interleaved_gate) {
        std::string twin_path = opts.out_interleaved;
        if (twin_path.empty() && prior_files.count("interleaved")) {
            twin_path = prior_files.at("interleaved");
        }
        if (twin_path.empty()) {
            twin_path = derive_interleaved_path(out);
        }
        std::vector<BenchmarkSequence> twins;
        twins.reserve(base.size());
        for (const BenchmarkSequence& seq : base) {
            twins.push_back(interleave(seq, *config.interleaved_gate));
        }
        std::ofstream f = open_output(twin_path);
        write_sequences(f, twins);
        files["interleaved"] = twin_path;
    }

    if (!opts.manifest_out.empty()) {
        write_manifest_file(opts.manifest_out, config, std::nullopt, files);
    }
}

// ---- simulate ----

struct SimulateOpts {
    std::string sequences;
    std::string interleaved_sequences;
    std::string noise_path;
    std::string engine = "stabilizer";
    int runs = 100;
    uint64_t seed = 0;
    int jobs = 1;
    std::string out;
    std::string manifest_out;
    std::string from_manifest;
    CLI::Option* runs_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

/// Echoes the generating config back from the sequence files themselves, so
/// a manifest can be written even when simulation starts from bare files.
BenchmarkConfig reconstruct_config(const std::vector<BenchmarkSequence>& base,
                                   const std::vector<BenchmarkSequence>& twins, int runs,
                                   uint64_t seed) {
    BenchmarkConfig config;
    config.n_qubits = base.front().n_qubits;
    std::map<int, int> counts;
    for (const BenchmarkSequence& seq : base) {
        counts[seq.length]++;
    }
    config.lengths.clear();
    config.sequences_per_length.clear();
    for (const auto& [length, count] : counts) {
        config.lengths.push_back(length);
        config.sequences_per_length.push_back(count);
    }
    config.runs_per_sequence = runs;
    config.final_strategy = base.front().strategy;
    if (!twins.empty() && twins.front().interleaved) {
        config.interleaved_gate = twins.front().interleaved;
    }
    config.master_seed = seed;
    return config;
}

/// Simulates one file's worth of sequences. `stream_offset` selects the
/// derived stream family: 2*id for the base set, 2*id+1 for twins, matching
/// run_benchmark so file-based and in-process pipelines agree bit for bit.
std::vector<RunRecord> simulate_file(const std::vector<BenchmarkSequence>& sequences,
                                     const NoiseModel& noise, int runs, uint64_t seed,
                                     uint64_t stream_offset, bool dense, int jobs) {
    for (const BenchmarkSequence& seq : sequences) {
        validate_noise(noise, seq.n_qubits);
    }
    std::vector<RunRecord> records(sequences.size());
    run_chunked(jobs, sequences.size(), [&](size_t first, size_t last) {
        for (size_t i = first; i < last; i++) {
            const BenchmarkSequence& seq = sequences[i];
            uint64_t id = static_cast<uint64_t>(seq.id);
            RandomStream rng =
                RandomStream::derive(seed, rng_domain::kSimulate, 2 * id + stream_offset);
            records[i] = dense ? simulate_dense(seq, noise, runs, rng).record
                               : simulate_stabilizer(seq, noise, runs, rng);
        }
    });
    return records;
}

void run_simulate(const SimulateOpts& opts) {
    std::string sequences_path = opts.sequences;
    std::string twins_path = opts.interleaved_sequences;
    std::string out = opts.out;
    int runs = opts.runs;
    uint64_t seed = opts.seed;
    std::optional<NoiseModel> noise;
    std::optional<BenchmarkConfig> manifest_config;

    if (!opts.from_manifest.empty()) {
        RunManifest manifest = manifest_from_json(read_text_file(opts.from_manifest));
        manifest_config = manifest.config;
        if (sequences_path.empty() && manifest.files.count("sequences")) {
            sequences_path = manifest.files.at("sequences");
        }
        if (twins_path.empty() && manifest.files.count("interleaved")) {
            twins_path = manifest.files.at("interleaved");
        }
        if (out.empty() && manifest.files.count("results")) {
            out = manifest.files.at("results");
        }
        if (opts.runs_opt != nullptr && opts.runs_opt->count() == 0) {
            runs = manifest.config.runs_per_sequence;
        }
        if (opts.seed_opt != nullptr && opts.seed_opt->count() == 0) {
            seed = manifest.config.master_seed;
        }
        noise = manifest.noise;
    }
    if (sequences_path.empty()) {
        throw Error("simulate needs --sequences (or a manifest that records one)");
    }
    if (out.empty()) {
        throw Error("simulate needs --out (or a manifest that records a results path)");
    }
    if (!opts.noise_path.empty()) {
        noise = noise_from_json(read_text_file(opts.noise_path));
    }
    NoiseModel noise_model = noise.value_or(NoiseModel{});
    bool dense = opts.engine == "dense";

    std::ifstream seq_in(sequences_path, std::ios::binary);
    if (!seq_in) {
        throw Error("cannot open '" + sequences_path + "' for reading");
    }
    std::vector<BenchmarkSequence> base = read_sequences(seq_in);
    if (base.empty()) {
        throw Error("no sequences found in '" + sequences_path + "'");
    }
    std::vector<BenchmarkSequence> twins;
    if (!twins_path.empty()) {
        std::ifstream twin_in(twins_path, std::ios::binary);
        if (!twin_in) {
            throw Error("cannot open '" + twins_path + "' for reading");
        }
        twins = read_sequences(twin_in);
    }

    ResultsFile results;
    results.base = simulate_file(base, noise_model, runs, seed, 0, dense, opts.jobs);
    if (!twins.empty()) {
        results.interleaved = simulate_file(twins, noise_model, runs, seed, 1, dense, opts.jobs);
    }
    {
        std::ofstream f = open_output(out);
        write_results_csv(f, results);
    }

    if (!opts.manifest_out.empty()) {
        BenchmarkConfig config =
            manifest_config ? *manifest_config : reconstruct_config(base, twins, runs, seed);
        std::map<std::string, std::string> files{{"sequences", sequences_path},
                                                 {"results", out}};
        if (!twins_path.empty()) {
            files["interleaved"] = twins_path;
        }
        write_manifest_file(opts.manifest_out, config, noise, files);
    }
}

// ---- predict ----

struct PredictOpts {
    std::string sequences;
    std::string out;
    bool check = false;
};

int run_predict(const PredictOpts& opts) {
    std::ifstream in(opts.sequences, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + opts.sequences + "' for reading");
    }
    std::vector<BenchmarkSequence> sequences = read_sequences(in);

    std::ostringstream lines;
    std::vector<int> mismatched;
    for (const BenchmarkSequence& seq : sequences) {
        OutcomePrediction derived = predict_outcome(seq);
        ordered_json j;
        j["id"] = seq.id;
        j["predict"] = ordered_json::parse(prediction_to_json(derived, seq.n_qubits));
        if (opts.check) {
            bool ok = derived == seq.prediction;
            j["match"] = ok;
            if (!ok) {
                mismatched.push_back(seq.id);
            }
        }
        lines << j.dump() << '\n';
    }
    emit_text(opts.out, lines.str());

    if (!mismatched.empty()) {
        ordered_json err;
        err["error"] = "prediction_mismatch";
        err["message"] = std::to_string(mismatched.size()) + " of " +
                         std::to_string(sequences.size()) +
                         " stored predictions disagree with the re-derived outcome";
        err["ids"] = mismatched;
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 0;
}

// ---- fit ----

struct FitCmdOpts {
    std::string results;
    std::string sequences;
    int n = 0;
    double floor = -1.0;
    std::vector<std::string> windows;
    std::string out;
    std::string plot;
    CLI::Option* n_opt = nullptr;
    CLI::Option* floor_opt = nullptr;
};

LengthWindow parse_window(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error("window must look like MIN:MAX, got '" + text + "'");
    }
    LengthWindow w;
    w.min_length = std::stoi(text.substr(0, colon));
    w.max_length = std::stoi(text.substr(colon + 1));
    return w;
}

/// Resolves the qubit count and success floor from flags and, when given,
/// the sequence file (parity predictions imply a floor of 1/2).
void resolve_fit_inputs(const FitCmdOpts& opts, int& n, FitOptions& fit_options) {
    bool have_n = opts.n_opt != nullptr && opts.n_opt->count() > 0;
    if (!opts.sequences.empty()) {
        std::ifstream in(opts.sequences, std::ios::binary);
        if (!in) {
            throw Error("cannot open '" + opts.sequences + "' for reading");
        }
        std::vector<BenchmarkSequence> sequences = read_sequences(in);
        if (sequences.empty()) {
            throw Error("no sequences found in '" + opts.sequences + "'");
        }
        n = sequences.front().n_qubits;
        if (have_n && opts.n != n) {
            throw DimensionError("--n disagrees with the sequence file");
        }
        if (sequences.front().prediction.is_parity()) {
            fit_options.success_floor = 0.5;
        }
    } else if (have_n) {
        n = opts.n;
    } else {
        throw Error("fit needs --n or --sequences to know the qubit count");
    }
    if (opts.floor_opt != nullptr && opts.floor_opt->count() > 0) {
        fit_options.success_floor = opts.floor;
    }
}

Report build_report(const ResultsFile& results, int n, const FitOptions& fit_options,
                    const std::vector<LengthWindow>& windows) {
    Report report;
    std::vector<LengthPoint> points = aggregate(results.base);
    report.base = fit_decay(points, n, fit_options);
    if (!results.interleaved.empty()) {
        report.interleaved = fit_decay(aggregate(results.interleaved), n, fit_options);
        report.epg = extract_epg(report.base, *report.interleaved);
    }
    if (!windows.empty()) {
        report.windows = windows;
        report.window_results = window_fits(points, windows, n, fit_options);
    }
    return report;
}

void run_fit(const FitCmdOpts& opts) {
    std::ifstream in(opts.results, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + opts.results + "' for reading");
    }
    ResultsFile results = read_results_csv(in);

    int n = 0;
    FitOptions fit_options;
    resolve_fit_inputs(opts, n, fit_options);

    std::vector<LengthWindow> windows;
    for (const std::string& w : opts.windows) {
        windows.push_back(parse_window(w));
    }

    Report report = build_report(results, n, fit_options, windows);
    emit_text(opts.out, report_to_json(report) + "\n");
    if (!opts.plot.empty()) {
        std::ofstream f = open_output(opts.plot);
        write_plot_csv(f, aggregate(results.base), report.base);
    }
}

// ---- bootstrap ----

struct BootstrapCmdOpts {
    std::string results;
    std::string sequences;
    int n = 0;
    double floor = -1.0;
    int resamples = 1000;
    uint64_t seed = 0;
    int jobs = 1;
    std::string out;
    CLI::Option* n_opt = nullptr;
    CLI::Option* floor_opt = nullptr;
};

ordered_json bootstrap_json(const BootstrapResult& result) {
    ordered_json j;
    j["eps_g"] = result.central.eps_g;
    j["se_eps_g"] = result.se_eps_g;
    j["eps_m"] = result.central.eps_m;
    j["se_eps_m"] = result.se_eps_m;
    return j;
}

void run_bootstrap(const BootstrapCmdOpts& opts) {
    std::ifstream in(opts.results, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + opts.results + "' for reading");
    }
    ResultsFile results = read_results_csv(in);

    FitCmdOpts fit_like;
    fit_like.sequences = opts.sequences;
    fit_like.n = opts.n;
    fit_like.floor = opts.floor;
    fit_like.n_opt = opts.n_opt;
    fit_like.floor_opt = opts.floor_opt;
    int n = 0;
    FitOptions fit_options;
    resolve_fit_inputs(fit_like, n, fit_options);

    BootstrapSpec spec;
    spec.n_qubits = n;
    spec.options = fit_options;
    spec.resamples = opts.resamples;
    spec.master_seed = opts.seed;
    spec.jobs = opts.jobs;

    BootstrapResult base = bootstrap_fit(results.base, spec);
    ordered_json j;
    j["n"] = n;
    j["resamples"] = opts.resamples;
    ordered_json base_json = bootstrap_json(base);
    for (auto it = base_json.begin(); it != base_json.end(); ++it) {
        j[it.key()] = it.value();
    }
    if (!results.interleaved.empty()) {
        BootstrapResult inter = bootstrap_fit(results.interleaved, spec);
        j["interleaved"] = bootstrap_json(inter);
        EPGResult epg = extract_epg(base.central, inter.central);
        j["eps_G"] = epg.eps_G;
        j["se_eps_G"] = paired_epg_se(base, inter);
    }
    emit_text(opts.out, j.dump() + "\n");
}

// ---- table2q / cost / synth ----

void run_table2q(const std::string& metric, const std::string& out) {
    const SynthesisTable2Q& table = shared_table_2q(metric_from_flag(metric));
    if (out.empty()) {
        write_table_jsonl(std::cout, table);
    } else {
        std::ofstream f = open_output(out);
        write_table_jsonl(f, table);
    }
}

void run_cost(int n, const std::string& metric, const std::string& out) {
    Rational mean = avg_two_qubit_cost(n, metric_from_flag(metric));
    ordered_json j;
    j["n"] = n;
    j["metric"] = metric;
    j["num"] = mean.num;
    j["den"] = mean.den;
    j["mean"] = mean.value();
    emit_text(out, j.dump() + "\n");
}

void run_synth(const std::vector<std::string>& rows, const std::string& out) {
    BinarySymplectic m = BinarySymplectic::from_row_strings(rows);
    if (!is_symplectic(m)) {
        throw Error("matrix does not preserve the symplectic form");
    }
    GateCircuit circuit = synthesize(m, m.n());
    emit_text(out, circuit_to_json(circuit) + "\n");
}

// ---- report ----

struct ReportOpts {
    ConfigFlags cfg;
    std::string noise_path;
    std::vector<std::string> windows;
    int jobs = 1;
    std::string out;
    std::string plot;
    std::string sequences_out;
    std::string results_out;
    std::string manifest_out;
};

void run_report(const ReportOpts& opts) {
    BenchmarkConfig config = build_config(opts.cfg);
    std::optional<NoiseModel> noise;
    if (!opts.noise_path.empty()) {
        noise = noise_from_json(read_text_file(opts.noise_path));
    }

    BenchmarkResult bench = run_benchmark(config, noise.value_or(NoiseModel{}), opts.jobs);

    std::map<std::string, std::string> files;
    if (!opts.sequences_out.empty()) {
        std::ofstream f = open_output(opts.sequences_out);
        write_sequences(f, bench.base_sequences);
        files["sequences"] = opts.sequences_out;
        if (!bench.interleaved_sequences.empty()) {
            std::string twin_path = derive_interleaved_path(opts.sequences_out);
            std::ofstream tf = open_output(twin_path);
            write_sequences(tf, bench.interleaved_sequences);
            files["interleaved"] = twin_path;
        }
    }
    ResultsFile results;
    results.base = bench.base_records;
    results.interleaved = bench.interleaved_records;
    if (!opts.results_out.empty()) {
        std::ofstream f = open_output(opts.results_out);
        write_results_csv(f, results);
        files["results"] = opts.results_out;
    }

    FitOptions fit_options;
    if (config.final_strategy == FinalStepStrategy::RANDOM_JOINT_Z) {
        fit_options.success_floor = 0.5;
    }
    std::vector<LengthWindow> windows;
    for (const std::string& w : opts.windows) {
        windows.push_back(parse_window(w));
    }

    Report report = build_report(results, config.n_qubits, fit_options, windows);
    emit_text(opts.out, report_to_json(report) + "\n");
    if (!opts.plot.empty()) {
        std::ofstream f = open_output(opts.plot);
        write_plot_csv(f, aggregate(results.base), report.base);
    }
    if (!opts.manifest_out.empty()) {
        write_manifest_file(opts.manifest_out, config, noise, files);
    }
}

// ---- error surface ----

const char* error_code(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const DimensionError*>(&e)) return "dimension";
    if (dynamic_cast<const CapacityError*>(&e)) return "capacity";
    if (dynamic_cast<const UnsupportedGateError*>(&e)) return "unsupported_gate";
    if (dynamic_cast<const ExtractionError*>(&e)) return "extraction";
    if (dynamic_cast<const FitError*>(&e)) return "fit";
    return "error";
}

int emit_error(const std::string& code, const std::string& message, size_t line = 0) {
    ordered_json j;
    j["error"] = code;
    j["message"] = message;
    if (line > 0) {
        j["line"] = line;
    }
    std::cerr << j.dump() << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rb: multi-qubit randomized benchmarking toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("rb ") + kArtifactVersion);
    int exit_code = 0;

    // gen
    GenOpts gen;
    CLI::App* gen_cmd = app.add_subcommand(
        "gen", "Generate benchmark sequence files (base plus optional interleaved twin)");
    add_config_flags(gen_cmd, gen.cfg);
    gen_cmd->add_option("--jobs", gen.jobs, "Worker threads (never changes output)")
        ->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Base sequence JSONL path");
    gen_cmd->add_option("--out-interleaved", gen.out_interleaved,
                        "Twin sequence JSONL path (default derives from --out)");
    gen_cmd->add_option("--manifest", gen.manifest_out, "Write a run manifest here");
    gen_cmd->add_option("--from-manifest", gen.from_manifest,
                        "Reproduce a previous run: read the config (and default paths) "
                        "from this manifest, ignoring the config flags");
    gen_cmd->callback([&] { run_gen(gen); });

    // simulate
    SimulateOpts sim;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo simulate sequence files under a noise model");
    sim_cmd->add_option("--sequences", sim.sequences, "Base sequence JSONL");
    sim_cmd->add_option("--interleaved-sequences", sim.interleaved_sequences,
                        "Interleaved twin JSONL");
    sim_cmd->add_option("--noise", sim.noise_path, "Noise model JSON file");
    sim_cmd->add_option("--engine", sim.engine, "stabilizer (Pauli frame) or dense (exact, n<=3)")
        ->check(CLI::IsMember({"stabilizer", "dense"}))
        ->capture_default_str();
    sim.runs_opt = sim_cmd->add_option("--runs", sim.runs, "Repetitions per sequence")
                       ->capture_default_str();
    sim.seed_opt =
        sim_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    sim_cmd->add_option("--jobs", sim.jobs, "Worker threads (never changes output)")
        ->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "Results CSV path");
    sim_cmd->add_option("--manifest", sim.manifest_out, "Write a run manifest here");
    sim_cmd->add_option("--from-manifest", sim.from_manifest,
                        "Read file paths, noise, runs and seed from this manifest");
    sim_cmd->callback([&] { run_simulate(sim); });

    // predict
    PredictOpts predict;
    CLI::App* predict_cmd = app.add_subcommand(
        "predict", "Re-derive error-free predicted outcomes from a sequence file");
    predict_cmd->add_option("--sequences", predict.sequences, "Sequence JSONL")->required();
    predict_cmd->add_option("--out", predict.out, "Output path (default stdout)");
    predict_cmd->add_flag("--check", predict.check,
                          "Compare against the stored predictions; nonzero exit on mismatch");
    predict_cmd->callback([&] { exit_code = run_predict(predict); });

    // fit
    FitCmdOpts fit;
    CLI::App* fit_cmd =
        app.add_subcommand("fit", "Fit the decay model to a results CSV; emit report JSON");
    fit_cmd->add_option("--results", fit.results, "Results CSV")->required();
    fit.n_opt = fit_cmd->add_option("--n", fit.n, "Qubit count (or pass --sequences)");
    fit_cmd->add_option("--sequences", fit.sequences,
                        "Sequence JSONL used for metadata (qubit count, parity floor)");
    fit.floor_opt = fit_cmd->add_option(
        "--floor", fit.floor, "Success-probability floor override (default 1/2^n, parity 1/2)");
    fit_cmd->add_option("--window", fit.windows,
                        "Length window MIN:MAX for consistency refits (repeatable)");
    fit_cmd->add_option("--out", fit.out, "Report JSON path (default stdout)");
    fit_cmd->add_option("--plot", fit.plot, "Plot CSV path (length,mean,sem,fitted)");
    fit_cmd->callback([&] { run_fit(fit); });

    // bootstrap
    BootstrapCmdOpts boot;
    CLI::App* boot_cmd = app.add_subcommand(
        "bootstrap", "Bootstrap standard errors for the fitted decay parameters");
    boot_cmd->add_option("--results", boot.results, "Results CSV")->required();
    boot.n_opt = boot_cmd->add_option("--n", boot.n, "Qubit count (or pass --sequences)");
    boot_cmd->add_option("--sequences", boot.sequences,
                         "Sequence JSONL used for metadata (qubit count, parity floor)");
    boot.floor_opt =
        boot_cmd->add_option("--floor", boot.floor, "Success-probability floor override");
    boot_cmd->add_option("-B,--resamples", boot.resamples, "Bootstrap resample count")
        ->capture_default_str();
    boot_cmd->add_option("--seed", boot.seed, "Master seed")->capture_default_str();
    boot_cmd->add_option("--jobs", boot.jobs, "Worker threads (never changes output)")
        ->capture_default_str();
    boot_cmd->add_option("--out", boot.out, "Output JSON path (default stdout)");
    boot_cmd->callback([&] { run_bootstrap(boot); });

    // table2q
    std::string table_metric = "G";
    std::string table_out;
    CLI::App* table_cmd =
        app.add_subcommand("table2q", "Emit the 720-class minimal two-qubit table as JSONL");
    table_cmd->add_option("--metric", table_metric, "Two-qubit gate charged by the cost")
        ->check(CLI::IsMember({"G", "CNOT"}))
        ->capture_default_str();
    table_cmd->add_option("--out", table_out, "Output path (default stdout)");
    table_cmd->callback([&] { run_table2q(table_metric, table_out); });

    // cost
    int cost_n = 2;
    std::string cost_metric = "CNOT";
    std::string cost_out;
    CLI::App* cost_cmd = app.add_subcommand(
        "cost", "Exact average minimal two-qubit-gate count C(n) over all classes, n <= 3");
    cost_cmd->add_option("--n", cost_n, "Number of qubits")->capture_default_str();
    cost_cmd->add_option("--metric", cost_metric, "Two-qubit gate charged by the cost")
        ->check(CLI::IsMember({"G", "CNOT"}))
        ->capture_default_str();
    cost_cmd->add_option("--out", cost_out, "Output JSON path (default stdout)");
    cost_cmd->callback([&] { run_cost(cost_n, cost_metric, cost_out); });

    // synth
    std::vector<std::string> synth_rows;
    std::string synth_out;
    CLI::App* synth_cmd = app.add_subcommand(
        "synth", "Synthesize a circuit for a symplectic matrix given as 2n row bit-strings");
    synth_cmd->add_option("rows", synth_rows, "Row bit-strings, e.g. 10 01")->required();
    synth_cmd->add_option("--out", synth_out, "Circuit JSON path (default stdout)");
    synth_cmd->callback([&] { run_synth(synth_rows, synth_out); });

    // report
    ReportOpts report;
    CLI::App* report_cmd = app.add_subcommand(
        "report", "Full pipeline: generate, simulate and fit one config in-process");
    add_config_flags(report_cmd, report.cfg);
    report_cmd->add_option("--noise", report.noise_path, "Noise model JSON file");
    report_cmd->add_option("--window", report.windows,
                           "Length window MIN:MAX for consistency refits (repeatable)");
    report_cmd->add_option("--jobs", report.jobs, "Worker threads (never changes output)")
        ->capture_default_str();
    report_cmd->add_option("--out", report.out, "Report JSON path (default stdout)");
    report_cmd->add_option("--plot", report.plot, "Plot CSV path");
    report_cmd->add_option("--sequences-out", report.sequences_out,
                           "Also write the generated sequences here");
    report_cmd->add_option("--results-out", report.results_out,
                           "Also write the simulated results CSV here");
    report_cmd->add_option("--manifest", report.manifest_out, "Write a run manifest here");
    report_cmd->callback([&] { run_report(report); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help / --version
        }
        return emit_error("usage", e.what()), 2;
    } catch (const ParseError& e) {
        return emit_error("parse", e.what(), e.line);
    } catch (const Error& e) {
        return emit_error(error_code(e), e.what());
    } catch (const std::exception& e) {
        return emit_error("internal", e.what());
    }
    return exit_code;
}
