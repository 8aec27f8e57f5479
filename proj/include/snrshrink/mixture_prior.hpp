#pragma once

// Symmetric zero-mean normal mixture prior on the signal-to-noise ratio
// beta / s, fitted by maximum likelihood (EM) on the marginal of z = b / s.
//
// With SNR ~ sum_i p_i N(0, tau_i^2) and z = SNR + N(0, 1), the marginal is
//   g(z) = sum_i p_i N(z; 0, tau_i^2 + 1),
// so fitting g under the constraint (observation variance >= 1) and reading
// off tau_i^2 = variance_i - 1 deconvolves the unit noise.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "snrshrink/data_ingest.hpp"
#include "snrshrink/error.hpp"
#include "snrshrink/normal.hpp"
#include "snrshrink/parallel.hpp"
#include "snrshrink/rng.hpp"

namespace snrshrink {

class SnrPrior {
public:
    // Components are reordered so scales ascend. Weights must be positive and
    // sum to 1 within 1e-9; sums off by more than 1e-12 are renormalized.
    SnrPrior(std::vector<double> weights, std::vector<double> scales) {
        if (weights.empty() || weights.size() != scales.size()) {
            throw InputError("prior needs equally many weights and scales (at least one)");
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) throw InputError("prior weights must be positive");
            if (!(scales[i] >= 0.0) || !std::isfinite(scales[i])) throw InputError("prior scales must be nonnegative");
            sum += weights[i];
        }
        if (std::abs(sum - 1.0) > 1e-9) throw InputError("prior weights must sum to 1");
        if (std::abs(sum - 1.0) > 1e-12) {
            for (auto& w : weights) w /= sum;
        }

        std::vector<std::size_t> order(weights.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return scales[a] < scales[b] || (scales[a] == scales[b] && weights[a] < weights[b]);
        });
        weights_.reserve(order.size());
        scales_.reserve(order.size());
        for (auto i : order) {
            weights_.push_back(weights[i]);
            scales_.push_back(scales[i]);
        }
    }

    static SnrPrior single(double scale) { return SnrPrior({1.0}, {scale}); }

    // p on the first scale, 1 - p on the second.
    static SnrPrior two_component(double p, double scale1, double scale2) {
        return SnrPrior({p, 1.0 - p}, {scale1, scale2});
    }

    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<double>& scales() const noexcept { return scales_; }
    std::size_t k() const noexcept { return weights_.size(); }

    // Standard deviation of z = SNR + noise within component i.
    double marginal_sd(std::size_t i) const noexcept { return std::sqrt(scales_[i] * scales_[i] + 1.0); }

    // Density of the SNR itself; components with scale 0 are point masses
    // and contribute nothing away from 0.
    double snr_density(double snr) const noexcept {
        double acc = 0.0;
        for (std::size_t i = 0; i < k(); ++i) {
            if (scales_[i] > 0.0) acc += weights_[i] * normal_pdf(snr / scales_[i]) / scales_[i];
        }
        return acc;
    }

    friend bool operator==(const SnrPrior&, const SnrPrior&) = default;

private:
    std::vector<double> weights_;
    std::vector<double> scales_;
};

inline double log_marginal_z_density(const SnrPrior& prior, double z) noexcept {
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(prior.k());
    for (std::size_t i = 0; i < prior.k(); ++i) {
        const double sd = prior.marginal_sd(i);
        terms[i] = std::log(prior.weights()[i]) + normal_log_pdf(z / sd) - std::log(sd);
        top = std::max(top, terms[i]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - top);
    return top + std::log(acc);
}

// g(z) = sum_i p_i phi(z / sqrt(tau_i^2 + 1)) / sqrt(tau_i^2 + 1)
inline double marginal_z_density(const SnrPrior& prior, double z) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < prior.k(); ++i) {
        const double sd = prior.marginal_sd(i);
        acc += prior.weights()[i] * normal_pdf(z / sd) / sd;
    }
    return acc;
}

struct FitOptions {
    std::size_t restarts = 20;
    std::size_t max_iterations = 2000;
    double relative_tolerance = 1e-9;
    std::uint64_t seed = 0;
};

struct FitReport {
    SnrPrior prior;
    double log_likelihood = 0.0;  // sum_j ln g(z_j) over signed z (folded data: +n ln 2 omitted)
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t n = 0;
    double bic = 0.0;
    std::vector<double> trace;  // log-likelihood per iteration of the winning restart
};

inline double bic_for(std::size_t k, std::size_t n, double log_likelihood) noexcept {
    return static_cast<double>(2 * k - 1) * std::log(static_cast<double>(n)) - 2.0 * log_likelihood;
}

namespace detail {

struct EmRun {
    std::vector<double> weights;
    std::vector<double> variances;  // marginal variances tau^2 + 1, floored at 1
    double log_likelihood = -std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

// Fills resp (n x k, row-major) and returns the log-likelihood.
inline double em_e_step(const std::vector<double>& squares, const std::vector<double>& weights,
                        const std::vector<double>& variances, std::vector<double>& resp) {
    const std::size_t k = weights.size();
    std::vector<double> offset(k), inv2v(k);
    for (std::size_t i = 0; i < k; ++i) {
        offset[i] = std::log(weights[i]) - 0.5 * std::log(variances[i]) - kLogSqrt2Pi;
        inv2v[i] = 0.5 / variances[i];
    }
    double ll = 0.0;
    for (std::size_t j = 0; j < squares.size(); ++j) {
        double* row = resp.data() + j * k;
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < k; ++i) {
            row[i] = offset[i] - squares[j] * inv2v[i];
            top = std::max(top, row[i]);
        }
        double total = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            row[i] = std::exp(row[i] - top);
            total += row[i];
        }
        for (std::size_t i = 0; i < k; ++i) row[i] /= total;
        ll += top + std::log(total);
    }
    return ll;
}

struct EmState {
    std::vector<double> weights;
    std::vector<double> variances;
};

// One EM update from the responsibilities: weights are mean responsibilities,
// variances the responsibility-weighted mean of z^2, floored at 1.
inline EmState em_m_step(const std::vector<double>& squares, const std::vector<double>& resp, const EmState& from) {
    const std::size_t n = squares.size();
    const std::size_t k = from.weights.size();
    std::vector<double> mass(k, 0.0), second(k, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double* row = resp.data() + j * k;
        for (std::size_t i = 0; i < k; ++i) {
            mass[i] += row[i];
            second[i] += row[i] * squares[j];
        }
    }
    EmState next = from;
    for (std::size_t i = 0; i < k; ++i) {
        next.weights[i] = std::max(mass[i] / static_cast<double>(n), 1e-300);
        if (mass[i] > 0.0) next.variances[i] = std::max(1.0, second[i] / mass[i]);
    }
    return next;
}

// Projects an extrapolated point back onto the parameter space.
inline bool project(EmState& st) {
    double total = 0.0;
    for (std::size_t i = 0; i < st.weights.size(); ++i) {
        if (!std::isfinite(st.weights[i]) || !std::isfinite(st.variances[i])) return false;
        st.weights[i] = std::max(st.weights[i], 1e-12);
        st.variances[i] = std::max(st.variances[i], 1.0);
        total += st.weights[i];
    }
    for (auto& w : st.weights) w /= total;
    return true;
}

// EM with SQUAREM extrapolation (Varadhan & Roland 2008). Every accepted
// point has a log-likelihood at least that of the plain EM step it replaces,
// so the recorded trace is nondecreasing. Each EM update counts as one
// iteration against max_iterations.
inline EmRun run_em(const std::vector<double>& squares, std::vector<double> weights, std::vector<double> variances,
                    const FitOptions& opts) {
    const std::size_t n = squares.size();
    const std::size_t k = weights.size();
    std::vector<double> resp(n * k);
    EmRun run;
    EmState cur{std::move(weights), std::move(variances)};
    double ll = em_e_step(squares, cur.weights, cur.variances, resp);
    run.trace.push_back(ll);
    std::size_t iter = 0;

    auto flat = [k](const EmState& st) {
        std::vector<double> v(st.weights);
        v.insert(v.end(), st.variances.begin(), st.variances.end());
        return v;
    };
    auto unflat = [k](const std::vector<double>& v) {
        return EmState{std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)),
                       std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(k), v.end())};
    };

    while (iter < opts.max_iterations) {
        // Two plain EM steps.
        const EmState first = em_m_step(squares, resp, cur);
        const double ll1 = em_e_step(squares, first.weights, first.variances, resp);
        ++iter;
        EmState best = first;
        double best_ll = ll1;
        std::vector<double> best_resp;
        if (iter < opts.max_iterations) {
            const EmState second = em_m_step(squares, resp, first);
            const double ll2 = em_e_step(squares, second.weights, second.variances, resp);
            ++iter;
            best = second;
            best_ll = ll2;

            // Extrapolate along the two-step direction, then stabilize with one EM step.
            const auto x0 = flat(cur), x1 = flat(first), x2 = flat(second);
            double rr = 0.0, vv = 0.0;
            std::vector<double> r(x0.size()), v(x0.size());
            for (std::size_t i = 0; i < x0.size(); ++i) {
                r[i] = x1[i] - x0[i];
                v[i] = x2[i] - x1[i] - r[i];
                rr += r[i] * r[i];
                vv += v[i] * v[i];
            }
            if (vv > 0.0 && iter < opts.max_iterations) {
                const double alpha = std::min(-1.0, -std::sqrt(rr / vv));
                std::vector<double> x(x0.size());
                for (std::size_t i = 0; i < x0.size(); ++i) x[i] = x0[i] - 2.0 * alpha * r[i] + alpha * alpha * v[i];
                EmState jump = unflat(x);
                if (project(jump)) {
                    best_resp = resp;
                    em_e_step(squares, jump.weights, jump.variances, resp);
                    const EmState stabilized = em_m_step(squares, resp, jump);
                    const double ll3 = em_e_step(squares, stabilized.weights, stabilized.variances, resp);
                    ++iter;
                    if (std::isfinite(ll3) && ll3 >= ll2) {
                        best = stabilized;
                        best_ll = ll3;
                        best_resp.clear();
                    } else {
                        resp.swap(best_resp);
                    }
                }
            }
        }
        cur = std::move(best);
        const double change = std::abs(best_ll - ll);
        ll = best_ll;
        run.trace.push_back(ll);
        if (change < opts.relative_tolerance * std::abs(ll)) {
            run.converged = true;
            break;
        }
    }
    run.weights = std::move(cur.weights);
    run.variances = std::move(cur.variances);
    run.log_likelihood = ll;
    run.iterations = iter;
    return run;
}

// Quantile of sorted data by linear interpolation.
inline double sorted_quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

// Maximum-likelihood fit of a k-component prior. Initial scales sit at evenly
// spaced quantiles of sqrt(max(z^2 - 1, 0)) with equal weights; further
// restarts jitter that start. The best likelihood wins (ties: earliest restart).
inline FitReport fit_em(const Corpus& corpus, std::size_t k, const FitOptions& opts = {}) {
    if (k < 1) throw InputError("fit_em: k must be at least 1");
    std::vector<double> squares;
    squares.reserve(corpus.size());
    std::set<double> distinct;
    for (const auto& r : corpus.records()) {
        squares.push_back(r.z() * r.z());
        distinct.insert(std::abs(r.z()));
    }
    if (k > distinct.size()) {
        throw InputError("fit_em: k = " + std::to_string(k) + " exceeds the number of distinct |z| values (" +
                         std::to_string(distinct.size()) + ")");
    }

    std::vector<double> spread;
    spread.reserve(squares.size());
    for (double sq : squares) spread.push_back(std::sqrt(std::max(sq - 1.0, 0.0)));
    std::sort(spread.begin(), spread.end());
    std::vector<double> base_scales(k);
    for (std::size_t i = 0; i < k; ++i) {
        base_scales[i] = detail::sorted_quantile(spread, (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(k)));
    }

    const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
    std::vector<detail::EmRun> runs(restarts);
    parallel_for(restarts, [&](std::size_t r) {
        std::vector<double> weights(k, 1.0 / static_cast<double>(k));
        std::vector<double> variances(k);
        CounterRng rng(opts.seed, r);
        double weight_sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double scale = base_scales[i];
            if (r > 0) {
                scale = scale * std::exp(0.5 * rng.normal()) + 0.25 * std::abs(rng.normal());
                weights[i] = std::exp(0.5 * rng.normal());
            }
            weight_sum += weights[i];
            variances[i] = scale * scale + 1.0;
        }
        for (auto& w : weights) w /= weight_sum;
        runs[r] = detail::run_em(squares, std::move(weights), std::move(variances), opts);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r) {
        if (runs[r].log_likelihood > runs[best].log_likelihood) best = r;
    }
    auto& win = runs[best];
    std::vector<double> scales(k);
    for (std::size_t i = 0; i < k; ++i) scales[i] = std::sqrt(win.variances[i] - 1.0);
    double wsum = 0.0;
    for (double w : win.weights) wsum += w;
    for (auto& w : win.weights) w /= wsum;

    const std::size_t n = squares.size();
    return FitReport{SnrPrior(win.weights, scales),
                     win.log_likelihood,
                     win.iterations,
                     win.converged,
                     n,
                     bic_for(k, n, win.log_likelihood),
                     std::move(win.trace)};
}

// Fits k = 1..k_max and keeps the smallest BIC (ties go to smaller k).
inline FitReport select_k(const Corpus& corpus, std::size_t k_max, const FitOptions& opts = {}) {
    if (k_max < 1) throw InputError("select_k: k_max must be at least 1");
    std::optional<FitReport> best;
    for (std::size_t k = 1; k <= k_max; ++k) {
        auto report = fit_em(corpus, k, opts);
        if (!best || report.bic < best->bic) best = std::move(report);
    }
    return std::move(*best);
}

// Prior persistence: JSON with k, weights, scales, source_label, fitted_n.
// Reloads are bit-exact (see save_prior).
inline nlohmann::json prior_to_json(const SnrPrior& prior, const std::string& source_label = "",
                                    std::size_t fitted_n = 0) {
    nlohmann::json doc;
    doc["k"] = prior.k();
    doc["weights"] = prior.weights();
    doc["scales"] = prior.scales();
    doc["source_label"] = source_label;
    doc["fitted_n"] = fitted_n;
    return doc;
}

struct PriorDocument {
    SnrPrior prior;
    std::string source_label;
    std::size_t fitted_n = 0;
};

inline PriorDocument prior_document_from_json(const nlohmann::json& doc) {
    try {
        const auto k = doc.at("k").get<std::size_t>();
        auto weights = doc.at("weights").get<std::vector<double>>();
        auto scales = doc.at("scales").get<std::vector<double>>();
        if (weights.size() != k || scales.size() != k) throw InputError("prior file: k does not match array lengths");
        return {SnrPrior(std::move(weights), std::move(scales)), doc.value("source_label", std::string{}),
                doc.value("fitted_n", std::size_t{0})};
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed prior file: ") + e.what());
    }
}

inline SnrPrior prior_from_json(const nlohmann::json& doc) { return prior_document_from_json(doc).prior; }

inline void save_prior(const SnrPrior& prior, const std::string& path, const std::string& source_label = "",
                       std::size_t fitted_n = 0) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write prior file '" + path + "'");
    // nlohmann::json emits the shortest round-trip representation, which is
    // at most 17 significant digits and parses back to the identical double.
    out << prior_to_json(prior, source_label, fitted_n).dump(2) << '\n';
    if (!out) throw InputError("failed writing prior file '" + path + "'");
}

inline PriorDocument load_prior_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open prior file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed prior file: ") + e.what());
    }
    return prior_document_from_json(doc);
}

inline SnrPrior load_prior(const std::string& path) { return load_prior_document(path).prior; }

}  // namespace snrshrink
