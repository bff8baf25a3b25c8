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

#include "rbkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include "rbkit/error.hpp"

namespace rbkit {

namespace {

double dimension_factor(int n) {
    double dim = std::ldexp(1.0, n);
    return dim / (dim - 1.0);
}

double sample_sem(const std::vector<double>& values, double mean) {
    size_t m = values.size();
    if (m < 2) {
        return 0.0;
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / (static_cast<double>(m - 1) * static_cast<double>(m)));
}

}  // namespace

std::vector<LengthPoint> aggregate(const std::vector<RunRecord>& records) {
    if (records.empty()) {
        throw Error("no records to aggregate");
    }
    std::map<int, LengthPoint> buckets;
    for (const RunRecord& rec : records) {
        if (rec.runs <= 0) {
            throw Error("record has nonpositive run count");
        }
        if (rec.successes < 0 || rec.successes > rec.runs) {
            throw Error("record success count outside [0, runs]");
        }
        LengthPoint& pt = buckets[rec.length];
        pt.length = rec.length;
        pt.fidelities.push_back(static_cast<double>(rec.successes) / rec.runs);
        pt.run_counts.push_back(rec.runs);
    }
    std::vector<LengthPoint> points;
    points.reserve(buckets.size());
    for (auto& [length, pt] : buckets) {
        double sum = 0.0;
        for (double f : pt.fidelities) {
            sum += f;
        }
        pt.n_sequences = static_cast<int>(pt.fidelities.size());
        pt.mean_fidelity = sum / pt.n_sequences;
        pt.sem = sample_sem(pt.fidelities, pt.mean_fidelity);
        points.push_back(std::move(pt));
    }
    return points;
}

double DecayFit::evaluate(int length) const {
    double c = dimension_factor(n_qubits);
    double sg = 1.0 - c * eps_g;
    double sm = 1.0 - c * eps_m;
    return success_floor + (1.0 - success_floor) * sm * std::pow(sg, length);
}

namespace {

// ---------------------------------------------------------------------------
// Weighted Levenberg-Marquardt for the two-parameter decay.
// ---------------------------------------------------------------------------

struct FitPoint {
    int length;
    double mean;
    double sigma;  // weight = 1/sigma^2
};

/// Binomial standard error of the bucket mean, used as the floor for
/// zero-variance lengths. Returns 0 when run counts are unknown.
double binomial_sem_floor(const LengthPoint& pt) {
    long total = 0;
    for (int r : pt.run_counts) {
        total += r;
    }
    if (total <= 0) {
        return 0.0;
    }
    double n = static_cast<double>(total);
    double p = std::clamp(pt.mean_fidelity, 0.5 / n, 1.0 - 0.5 / n);
    return std::sqrt(p * (1.0 - p) / n);
}

double model_mean(double floor, double c, double eps_g, double eps_m, int l) {
    double sg = 1.0 - c * eps_g;
    double sm = 1.0 - c * eps_m;
    return floor + (1.0 - floor) * sm * std::pow(sg, l);
}

double chi_square_at(const std::vector<FitPoint>& pts, double floor, double c, double eps_g,
                     double eps_m) {
    double chi2 = 0.0;
    for (const FitPoint& p : pts) {
        double r = (p.mean - model_mean(floor, c, eps_g, eps_m, p.length)) / p.sigma;
        chi2 += r * r;
    }
    return chi2;
}

struct Normal2 {
    double a00 = 0.0, a01 = 0.0, a11 = 0.0;  // J^T J (symmetric)
    double g0 = 0.0, g1 = 0.0;               // J^T r
};

Normal2 normal_equations(const std::vector<FitPoint>& pts, double floor, double c,
                         double eps_g, double eps_m) {
    Normal2 ne;
    double sg = 1.0 - c * eps_g;
    double sm = 1.0 - c * eps_m;
    for (const FitPoint& p : pts) {
        double pw = std::pow(sg, p.length);
        double f = floor + (1.0 - floor) * sm * pw;
        double dfg = p.length == 0
                         ? 0.0
                         : -(1.0 - floor) * sm * p.length * std::pow(sg, p.length - 1) * c;
        double dfm = -(1.0 - floor) * c * pw;
        double j0 = dfg / p.sigma;
        double j1 = dfm / p.sigma;
        double r = (p.mean - f) / p.sigma;
        ne.a00 += j0 * j0;
        ne.a01 += j0 * j1;
        ne.a11 += j1 * j1;
        ne.g0 += j0 * r;
        ne.g1 += j1 * r;
    }
    return ne;
}

/// Log-linear initialization: ln((F - A)/(1 - A)) = ln(1-d_m) + l ln(1-d_g)
/// is exact wherever the transformed value is positive.
std::pair<double, double> initial_guess(const std::vector<FitPoint>& pts, double floor,
                                        double c) {
    double sw = 0, swl = 0, swll = 0, swy = 0, swly = 0;
    int usable = 0;
    for (const FitPoint& p : pts) {
        double y = (p.mean - floor) / (1.0 - floor);
        if (y < 1e-12) {
            continue;
        }
        double lny = std::log(y);
        double sigma_ln = p.sigma / (y * (1.0 - floor));
        double w = 1.0 / (sigma_ln * sigma_ln);
        sw += w;
        swl += w * p.length;
        swll += w * static_cast<double>(p.length) * p.length;
        swy += w * lny;
        swly += w * p.length * lny;
        usable++;
    }
    double det = sw * swll - swl * swl;
    if (usable < 2 || std::abs(det) < 1e-30) {
        return {0.05 / c, 0.05 / c};
    }
    double slope = (sw * swly - swl * swy) / det;
    double intercept = (swll * swy - swl * swly) / det;
    double dg = 1.0 - std::min(std::exp(slope), 1.9);
    double dm = 1.0 - std::min(std::exp(intercept), 1.9);
    return {dg / c, dm / c};
}

std::string fit_diagnostics(const std::vector<FitPoint>& pts, double floor, double c,
                            double init_g, double init_m, double eps_g, double eps_m) {
    std::ostringstream os;
    os << "initial guess eps_g=" << init_g << " eps_m=" << init_m << "; current eps_g="
       << eps_g << " eps_m=" << eps_m << "; residuals:";
    for (const FitPoint& p : pts) {
        os << " l=" << p.length << ":"
           << (p.mean - model_mean(floor, c, eps_g, eps_m, p.length)) / p.sigma;
    }
    return os.str();
}

}  // namespace

DecayFit fit_decay(const std::vector<LengthPoint>& points, int n_qubits,
                   const FitOptions& options) {
    if (n_qubits < 1) {
        throw DimensionError("fit requires at least one qubit");
    }
    double floor = options.success_floor.value_or(1.0 / std::ldexp(1.0, n_qubits));
    if (floor < 0.0 || floor >= 1.0) {
        throw Error("success floor must lie in [0, 1)");
    }
    std::vector<LengthPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const LengthPoint& a, const LengthPoint& b) { return a.length < b.length; });
    for (size_t i = 1; i < sorted.size(); i++) {
        if (sorted[i].length == sorted[i - 1].length) {
            throw Error("duplicate length in fit input");
        }
    }

    DecayFit fit;
    fit.n_qubits = n_qubits;
    fit.success_floor = floor;

    // Saturation guard: keep lengths up to the first point indistinguishable
    // from the floor, drop the remainder unless overridden.
    size_t usable = sorted.size();
    for (size_t i = 0; i < sorted.size(); i++) {
        if (sorted[i].mean_fidelity <= floor + options.saturation_margin) {
            std::ostringstream os;
            os << "length " << sorted[i].length << " is saturated (mean "
               << sorted[i].mean_fidelity << " vs floor " << floor << ")";
            fit.warnings.push_back(os.str());
            if (!options.allow_saturated) {
                usable = i + 1;
            }
            break;
        }
    }
    sorted.resize(usable);

    if (sorted.size() < 3) {
        throw FitError("fewer than 3 usable lengths for a two-parameter fit");
    }
    if (sorted.size() == 3) {
        fit.warnings.push_back("only 3 lengths: 1 degree of freedom, low significance");
    }

    double c = dimension_factor(n_qubits);
    std::vector<FitPoint> pts;
    pts.reserve(sorted.size());
    double min_positive = 0.0;
    for (const LengthPoint& pt : sorted) {
        double sigma = pt.sem > 0.0 ? pt.sem : binomial_sem_floor(pt);
        pts.push_back(FitPoint{pt.length, pt.mean_fidelity, sigma});
        if (sigma > 0.0 && (min_positive == 0.0 || sigma < min_positive)) {
            min_positive = sigma;
        }
        fit.lengths_used.push_back(pt.length);
    }
    // Points with no empirical spread and unknown run counts fall back to
    // the smallest known sigma (plain least squares when none is known).
    for (FitPoint& p : pts) {
        if (p.sigma <= 0.0) {
            p.sigma = min_positive > 0.0 ? min_positive : 1.0;
        }
    }

    auto [init_g, init_m] = initial_guess(pts, floor, c);
    double eps_g = init_g;
    double eps_m = init_m;
    double chi2 = chi_square_at(pts, floor, c, eps_g, eps_m);
    double lambda = 1e-3;
    bool converged = false;
    for (int iter = 0; iter < options.max_iterations && !converged; iter++) {
        Normal2 ne = normal_equations(pts, floor, c, eps_g, eps_m);
        double a00 = ne.a00 * (1.0 + lambda) + 1e-30;
        double a11 = ne.a11 * (1.0 + lambda) + 1e-30;
        double det = a00 * a11 - ne.a01 * ne.a01;
        if (std::abs(det) < 1e-300) {
            lambda *= 10.0;
            continue;
        }
        double step_g = (a11 * ne.g0 - ne.a01 * ne.g1) / det;
        double step_m = (a00 * ne.g1 - ne.a01 * ne.g0) / det;
        double next_g = eps_g + step_g;
        double next_m = eps_m + step_m;
        double next_chi2 = 1.0 - c * next_g > 0.0
                               ? chi_square_at(pts, floor, c, next_g, next_m)
                               : std::numeric_limits<double>::infinity();
        if (next_chi2 <= chi2) {
            double drop = chi2 - next_chi2;
            double step = std::max(std::abs(step_g), std::abs(step_m));
            eps_g = next_g;
            eps_m = next_m;
            chi2 = next_chi2;
            lambda = std::max(lambda * 0.1, 1e-12);
            if (drop <= options.tolerance * std::max(chi2, 1e-30) + 1e-300 || step < 1e-14) {
                converged = true;
            }
        } else {
            lambda *= 10.0;
            if (lambda > 1e15) {
                converged = true;  // no downhill direction left: local minimum
            }
        }
    }
    if (!converged) {
        throw FitError("decay fit did not converge: " +
                       fit_diagnostics(pts, floor, c, init_g, init_m, eps_g, eps_m));
    }

    fit.eps_g = eps_g;
    fit.eps_m = eps_m;
    fit.chi2 = chi2;
    fit.dof = static_cast<int>(pts.size()) - 2;
    fit.p_value = chi_square_pvalue(chi2, fit.dof);

    // Covariance (J^T W J)^-1 of the sigma-scaled Jacobian, unscaled by the
    // reduced chi-square: the supplied errors are taken at face value.
    Normal2 ne = normal_equations(pts, floor, c, eps_g, eps_m);
    double det = ne.a00 * ne.a11 - ne.a01 * ne.a01;
    if (std::abs(det) > 1e-300) {
        fit.se_eps_g = std::sqrt(std::max(ne.a11 / det, 0.0));
        fit.se_eps_m = std::sqrt(std::max(ne.a00 / det, 0.0));
    } else {
        fit.se_eps_g = std::numeric_limits<double>::infinity();
        fit.se_eps_m = std::numeric_limits<double>::infinity();
        fit.warnings.push_back("singular covariance: parameter errors unavailable");
    }
    return fit;
}

double forward_interleaved_eps(double eps_g, double eps_G, int n) {
    double c = dimension_factor(n);
    return (1.0 - (1.0 - c * eps_g) * (1.0 - c * eps_G)) / c;
}

EPGResult extract_epg(const DecayFit& base, const DecayFit& interleaved) {
    if (base.n_qubits != interleaved.n_qubits) {
        throw DimensionError("base and interleaved fits have different qubit counts");
    }
    double c = dimension_factor(base.n_qubits);
    double sg = 1.0 - c * base.eps_g;
    if (sg <= 0.0) {
        throw ExtractionError("base decay is saturated: gate error is undefined");
    }
    double sp = 1.0 - c * interleaved.eps_g;
    EPGResult out;
    out.eps_g = base.eps_g;
    out.eps_g_prime = interleaved.eps_g;
    out.eps_G = (1.0 - sp / sg) / c;
    // Independent-fit propagation; bootstrap pairing refines this.
    double d_prime = 1.0 / sg;
    double d_base = sp / (sg * sg);
    out.se_eps_G = std::sqrt(d_prime * d_prime * interleaved.se_eps_g * interleaved.se_eps_g +
                             d_base * d_base * base.se_eps_g * base.se_eps_g);
    return out;
}

BootstrapResult bootstrap_fit(const std::vector<RunRecord>& records,
                              const BootstrapSpec& spec) {
    if (spec.resamples < 100) {
        throw Error("bootstrap needs at least 100 resamples");
    }
    std::vector<LengthPoint> points = aggregate(records);
    BootstrapResult out;
    out.central = fit_decay(points, spec.n_qubits, spec.options);

    int B = spec.resamples;
    std::vector<std::optional<std::pair<double, double>>> draws(static_cast<size_t>(B));
    auto work = [&](int begin, int end) {
        for (int b = begin; b < end; b++) {
            RandomStream rng = RandomStream::derive(spec.master_seed, rng_domain::kBootstrap,
                                                    static_cast<uint64_t>(b));
            std::vector<LengthPoint> resampled;
            resampled.reserve(points.size());
            for (const LengthPoint& pt : points) {
                LengthPoint rp;
                rp.length = pt.length;
                size_t m = pt.fidelities.size();
                rp.fidelities.reserve(m);
                rp.run_counts.reserve(m);
                double sum = 0.0;
                for (size_t i = 0; i < m; i++) {
                    size_t idx = static_cast<size_t>(rng.uniform_below(m));
                    int runs = pt.run_counts[idx];
                    double f = static_cast<double>(rng.binomial(
                                   static_cast<uint32_t>(runs), pt.fidelities[idx])) /
                               runs;
                    rp.fidelities.push_back(f);
                    rp.run_counts.push_back(runs);
                    sum += f;
                }
                rp.n_sequences = static_cast<int>(m);
                rp.mean_fidelity = sum / static_cast<double>(m);
                rp.sem = sample_sem(rp.fidelities, rp.mean_fidelity);
                resampled.push_back(std::move(rp));
            }
            try {
                DecayFit fit = fit_decay(resampled, spec.n_qubits, spec.options);
                draws[static_cast<size_t>(b)] = {fit.eps_g, fit.eps_m};
            } catch (const FitError&) {
                // left empty; tolerated up to 1% below
            }
        }
    };
    int workers = spec.jobs < 1 ? 1 : std::min(spec.jobs, B);
    if (workers <= 1) {
        work(0, B);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(workers));
        int chunk = (B + workers - 1) / workers;
        for (int t = 0; t < workers; t++) {
            int begin = t * chunk;
            int end = std::min(B, begin + chunk);
            if (begin < end) {
                threads.emplace_back(work, begin, end);
            }
        }
        for (std::thread& th : threads) {
            th.join();
        }
    }

    int failures = 0;
    for (const auto& d : draws) {
        if (!d) {
            failures++;
            continue;
        }
        out.eps_g_draws.push_back(d->first);
        out.eps_m_draws.push_back(d->second);
    }
    if (failures * 100 > B) {
        throw FitError("more than 1% of bootstrap resamples failed to fit");
    }
    auto spread = [](const std::vector<double>& v) {
        if (v.size() < 2) {
            return 0.0;
        }
        double mean = 0.0;
        for (double x : v) {
            mean += x;
        }
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) {
            ss += (x - mean) * (x - mean);
        }
        return std::sqrt(ss / static_cast<double>(v.size() - 1));
    };
    out.se_eps_g = spread(out.eps_g_draws);
    out.se_eps_m = spread(out.eps_m_draws);
    return out;
}

double paired_epg_se(const BootstrapResult& base, const BootstrapResult& interleaved) {
    if (base.central.n_qubits != interleaved.central.n_qubits) {
        throw DimensionError("base and interleaved bootstraps have different qubit counts");
    }
    double c = dimension_factor(base.central.n_qubits);
    size_t pairs = std::min(base.eps_g_draws.size(), interleaved.eps_g_draws.size());
    std::vector<double> epg;
    epg.reserve(pairs);
    for (size_t i = 0; i < pairs; i++) {
        double sg = 1.0 - c * base.eps_g_draws[i];
        if (sg <= 1e-12) {
            continue;
        }
        epg.push_back((1.0 - (1.0 - c * interleaved.eps_g_draws[i]) / sg) / c);
    }
    if (epg.size() < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (double x : epg) {
        mean += x;
    }
    mean /= static_cast<double>(epg.size());
    double ss = 0.0;
    for (double x : epg) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(epg.size() - 1));
}

namespace {

/// Regularized upper incomplete gamma Q(a, x) by series (x < a+1) or
/// continued fraction (x >= a+1). Standard Lentz evaluation.
double upper_gamma_q(double a, double x) {
    if (x <= 0.0) {
        return 1.0;
    }
    double log_prefactor = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) series; Q = 1 - P.
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int k = 0; k < 500; k++) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) {
                break;
            }
        }
        return 1.0 - sum * std::exp(log_prefactor);
    }
    double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; i++) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    return std::exp(log_prefactor) * h;
}

}  // namespace

double chi_square_pvalue(double chi2, int dof) {
    if (chi2 < 0.0 || !std::isfinite(chi2)) {
        throw Error("chi-square statistic must be finite and nonnegative");
    }
    if (dof < 1) {
        throw Error("degrees of freedom must be positive");
    }
    if (chi2 == 0.0) {
        return 1.0;
    }
    double x = chi2 / 2.0;
    if (dof % 2 == 0 && dof <= 100 && x <= 500.0) {
        // Q = e^-x sum_{k<dof/2} x^k/k!, exact for even dof.
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < dof / 2; k++) {
            term *= x / k;
            sum += term;
        }
        return std::min(1.0, std::exp(-x) * sum);
    }
    return std::clamp(upper_gamma_q(dof / 2.0, x), 0.0, 1.0);
}

std::vector<DecayFit> window_fits(const std::vector<LengthPoint>& points,
                                  const std::vector<LengthWindow>& windows, int n_qubits,
                                  const FitOptions& options) {
    std::vector<DecayFit> fits;
    fits.reserve(windows.size());
    for (const LengthWindow& w : windows) {
        std::vector<LengthPoint> subset;
        for (const LengthPoint& pt : points) {
            if (pt.length >= w.min_length && pt.length <= w.max_length) {
                subset.push_back(pt);
            }
        }
        if (subset.size() < 3) {
            std::ostringstream os;
            os << "window [" << w.min_length << ", " << w.max_length << "] covers "
               << subset.size() << " lengths; need at least 3";
            throw FitError(os.str());
        }
        fits.push_back(fit_decay(subset, n_qubits, options));
    }
    return fits;
}

double scatter_prediction(int length, const SynthesisTable2Q& table, const DecayFit& fit,
                          double eps_G, int runs) {
    if (fit.n_qubits != 2) {
        throw DimensionError("scatter prediction uses the two-qubit class table");
    }
    if (runs < 1) {
        throw Error("runs must be positive");
    }
    if (length < 0) {
        throw Error("length must be nonnegative");
    }
    double c = dimension_factor(2);
    double rho = 1.0 - c * eps_G;
    if (rho <= 0.0 || eps_G < 0.0) {
        throw Error("per-gate error must lie in [0, 3/4)");
    }
    double p = std::clamp(fit.evaluate(length), 0.0, 1.0);
    double binom_var = p * (1.0 - p) / runs;

    std::vector<int> hist = table.cost_histogram();
    double total = 0.0, sum = 0.0, sumsq = 0.0;
    for (size_t k = 0; k < hist.size(); k++) {
        total += hist[k];
        sum += static_cast<double>(k) * hist[k];
        sumsq += static_cast<double>(k) * k * hist[k];
    }
    double mean_k = sum / total;
    double var_k = sumsq / total - mean_k * mean_k;

    // Fidelity responds to the sequence's total gate count K through
    // amp * rho^(K - mean K); linearize around the mean. One class draw per
    // step plus the final class.
    double amp = std::max(fit.evaluate(length) - fit.success_floor, 0.0);
    double dev_k = std::sqrt(var_k * (length + 1));
    double gate_sd = std::abs(amp * std::log(rho)) * dev_k;
    return std::sqrt(binom_var + gate_sd * gate_sd);
}

LinearizedEpo linearized_epo_estimate(double one_qubit_step_error, double pulses_per_1q_step,
                                      double eps_G, double g_per_step,
                                      double pulses_per_2q_step) {
    if (one_qubit_step_error < 0.0 || eps_G < 0.0 || g_per_step < 0.0 ||
        pulses_per_2q_step < 0.0 || pulses_per_1q_step <= 0.0) {
        throw Error("linearized estimate requires nonnegative inputs and a positive pulse count");
    }
    LinearizedEpo out;
    out.e1 = (6.0 / 5.0) * one_qubit_step_error / pulses_per_1q_step;
    out.estimate = g_per_step * eps_G + pulses_per_2q_step * out.e1;
    return out;
}

}  // namespace rbkit
