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

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbkit/analysis.hpp"
#include "rbkit/benchgen.hpp"
#include "rbkit/sim.hpp"
#include "rbkit/synth.hpp"

namespace rbkit {

/// Version tag stamped into manifests; tracks the CMake project version.
inline constexpr const char* kArtifactVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Sequence files: JSON lines, one sequence per line. Example:
// {"id":7,"n":2,"len":3,"steps":[{"pauli":["+X","-I"],"class":["0101",...],
//  "circuit":[{"g":"RX","q":1,"t":1},{"g":"G","q":[0,1]}]}],
//  "interleaved":null,"final":{...},"predict":"01"}
// Parity predictions serialize as {"mask":"11","parity":-1} with mask
// character q covering qubit q.
// ---------------------------------------------------------------------------

std::string sequence_to_json_line(const BenchmarkSequence& seq);

/// Parses one line; throws ParseError tagged with `line_number` on malformed
/// or inconsistent content.
BenchmarkSequence sequence_from_json_line(const std::string& line, size_t line_number = 0);

/// The predict field alone as a JSON value: "10" or {"mask":"11","parity":-1}.
std::string prediction_to_json(const OutcomePrediction& prediction, int n);

void write_sequences(std::ostream& out, const std::vector<BenchmarkSequence>& sequences);
std::vector<BenchmarkSequence> read_sequences(std::istream& in);

// ---------------------------------------------------------------------------
// Results files: CSV with header "set,length,seq_id,runs,successes",
// set is "base" or "interleaved".
// ---------------------------------------------------------------------------

struct ResultsFile {
    std::vector<RunRecord> base;
    std::vector<RunRecord> interleaved;
};

void write_results_csv(std::ostream& out, const ResultsFile& results);
ResultsFile read_results_csv(std::istream& in);

// ---------------------------------------------------------------------------
// Noise model and benchmark config as JSON documents.
// ---------------------------------------------------------------------------

std::string noise_to_json(const NoiseModel& noise);
/// Strict parse: unknown keys are rejected so typos cannot silently zero a
/// noise channel.
NoiseModel noise_from_json(const std::string& text);

std::string config_to_json(const BenchmarkConfig& config);
BenchmarkConfig config_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Circuits and synthesis table export.
// ---------------------------------------------------------------------------

std::string circuit_to_json(const GateCircuit& circuit);
GateCircuit circuit_from_json(const std::string& text);

/// One line per class: {"class":[row strings],"g_count":k,"circuit":[...]}.
void write_table_jsonl(std::ostream& out, const SynthesisTable2Q& table);

// ---------------------------------------------------------------------------
// Analysis report: JSON document plus a plot-friendly CSV.
// ---------------------------------------------------------------------------

struct Report {
    DecayFit base;
    std::optional<DecayFit> interleaved;
    std::optional<EPGResult> epg;
    std::vector<LengthWindow> windows;
    std::vector<DecayFit> window_results;
};

std::string report_to_json(const Report& report);

/// CSV with header "length,mean,sem,fitted", one row per aggregated length.
void write_plot_csv(std::ostream& out, const std::vector<LengthPoint>& points,
                    const DecayFit& fit);

// ---------------------------------------------------------------------------
// Run manifest: enough to reproduce a batch byte for byte.
// ---------------------------------------------------------------------------

struct RunManifest {
    std::string artifact_version = kArtifactVersion;
    std::string created;  // ISO 8601 UTC, informational only
    BenchmarkConfig config;
    std::optional<NoiseModel> noise;
    std::map<std::string, std::string> files;  // role -> path
};

/// Current UTC time in ISO 8601 (e.g. "2026-01-07T12:34:56Z").
std::string current_utc_timestamp();

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

}  // namespace rbkit
