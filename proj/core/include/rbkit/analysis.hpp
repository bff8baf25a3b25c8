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
#include <optional>
#include <string>
#include <vector>

#include "rbkit/benchgen.hpp"
#include "rbkit/rng.hpp"
#include "rbkit/synth.hpp"

namespace rbkit {

/// Per-length summary of the observed success fractions.
struct LengthPoint {
    int length = 0;
    double mean_fidelity = 0.0;
    /// Standard error of the mean across sequences (0 for one sequence).
    double sem = 0.0;
    int n_sequences = 0;
    std::vector<double> fidelities;
    std::vector<int> run_counts;
};

/// Groups records by length (ascending) and summarizes each bucket.
/// Fidelity is successes/runs with the record's true run count.
/// Throws Error on empty input or invalid record contents.
std::vector<LengthPoint> aggregate(const std::vector<RunRecord>& records);

struct FitOptions {
    /// Success floor of the decay model; defaults to 1/2^n (basis readout).
    /// Parity readout data uses 0.5 regardless of n.
    std::optional<double> success_floor;
    /// Mean fidelities within this margin of the floor count as saturated;
    /// lengths past the first saturated point are dropped from the fit.
    double saturation_margin = 0.02;
    bool allow_saturated = false;
    int max_iterations = 200;
    double tolerance = 1e-12;
};

/// Weighted fit of mean fidelity to F(l) = A + (1-A)(1-d_m)(1-d_g)^l with
/// d = 2^n eps/(2^n-1) and floor A. Parameter standard errors come from the
/// weighted-least-squares covariance (J^T W J)^-1, taking the supplied SEMs
/// at face value (no reduced-chi-square rescaling).
struct DecayFit {
    int n_qubits = 0;
    double success_floor = 0.0;
    double eps_g = 0.0;
    double eps_m = 0.0;
    double se_eps_g = 0.0;
    double se_eps_m = 0.0;
    double chi2 = 0.0;
    int dof = 0;
    double p_value = 0.0;
    std::vector<int> lengths_used;
    std::vector<std::string> warnings;

    /// Model mean fidelity at the given sequence length.
    double evaluate(int length) const;
};

/// Levenberg-Marquardt weighted least squares with log-linear
/// initialization. Requires >= 3 usable lengths; throws FitError with the
/// initial guess and residuals on non-convergence.
DecayFit fit_decay(const std::vector<LengthPoint>& points, int n_qubits,
                   const FitOptions& options = {});

/// Interleaved-benchmark gate error isolated from the two decays.
struct EPGResult {
    double eps_G = 0.0;
    /// Propagated from the fits' standard errors assuming independence.
    double se_eps_G = 0.0;
    double eps_g = 0.0;
    double eps_g_prime = 0.0;
};

/// Compound step error of an interleaved sequence:
/// 1 - c eps' = (1 - c eps_g)(1 - c eps_G) with c = 2^n/(2^n-1).
double forward_interleaved_eps(double eps_g, double eps_G, int n);

/// Inverts forward_interleaved_eps for the gate error. Throws
/// ExtractionError when the base decay is at or past saturation
/// (1 - c eps_g <= 0), where the identity has no solution.
EPGResult extract_epg(const DecayFit& base, const DecayFit& interleaved);

struct BootstrapSpec {
    int n_qubits = 2;
    FitOptions options;
    int resamples = 1000;
    uint64_t master_seed = 0;
    int jobs = 1;
};

/// Central fit plus resampled-parameter standard errors. Central values are
/// those of the direct fit; only the spread comes from resampling.
struct BootstrapResult {
    DecayFit central;
    double se_eps_g = 0.0;
    double se_eps_m = 0.0;
    /// Parameters of each successful resample fit, in resample order.
    std::vector<double> eps_g_draws;
    std::vector<double> eps_m_draws;
};

/// Partially parametric bootstrap: per length, sequences are drawn with
/// replacement and each drawn fidelity is replaced by a binomial fraction
/// over that sequence's run count, then the resample is refit. Resample b
/// uses the stream derived from (master_seed, bootstrap domain, b), so
/// results do not depend on the jobs count.
BootstrapResult bootstrap_fit(const std::vector<RunRecord>& records, const BootstrapSpec& spec);

/// Standard error of the gate error over paired bootstrap draws of the base
/// and interleaved fits. Draws whose extraction saturates are skipped.
double paired_epg_se(const BootstrapResult& base, const BootstrapResult& interleaved);

/// Upper-tail probability of the chi-square distribution: exact finite sum
/// for even dof, incomplete-gamma series/continued fraction for odd dof.
double chi_square_pvalue(double chi2, int dof);

/// Inclusive length range selecting a subset of points.
struct LengthWindow {
    int min_length = 0;
    int max_length = 0;
};

/// Independent fits over length windows. A 3-length window fits but carries
/// a low-significance warning; fewer than 3 lengths throws FitError.
std::vector<DecayFit> window_fits(const std::vector<LengthPoint>& points,
                                  const std::vector<LengthWindow>& windows, int n_qubits,
                                  const FitOptions& options = {});

/// Predicted standard deviation of per-sequence fidelity at one length:
/// binomial sampling spread at the model fidelity plus the spread induced by
/// the two-qubit-gate count distribution of random classes (one draw per
/// step and one for the final class), each gate costing eps_G, added in
/// quadrature.
double scatter_prediction(int length, const SynthesisTable2Q& table, const DecayFit& fit,
                          double eps_G, int runs);

/// Linearized error-per-operation estimate from pulse counts.
struct LinearizedEpo {
    /// Error per pi/2 pulse: (6/5) * one-qubit step error / pulses per step.
    double e1 = 0.0;
    /// g_per_step * eps_G + pulses_per_2q_step * e1.
    double estimate = 0.0;
};

LinearizedEpo linearized_epo_estimate(double one_qubit_step_error, double pulses_per_1q_step,
                                      double eps_G, double g_per_step,
                                      double pulses_per_2q_step);

}  // namespace rbkit
