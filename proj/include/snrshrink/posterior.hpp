#pragma once

// Closed-form posterior for beta given (b, s) under a SnrPrior.
//
// Given component i, beta / s | z ~ N(z k_i, k_i) with k_i = tau_i^2 / (tau_i^2 + 1),
// and the component probabilities are proportional to
//   p_i / sqrt(tau_i^2 + 1) * phi(z / sqrt(tau_i^2 + 1)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "snrshrink/error.hpp"
#include "snrshrink/mixture_prior.hpp"
#include "snrshrink/normal.hpp"

namespace snrshrink {

struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double x) const noexcept { return lower <= x && x <= upper; }
    bool contains(const Interval& other) const noexcept { return lower <= other.lower && other.upper <= upper; }
};

// Normal mixture for beta. Components with sd 0 are point masses.
struct PosteriorMixture {
    std::vector<double> weights;
    std::vector<double> means;
    std::vector<double> sds;

    double mean() const noexcept {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * means[i];
        return acc;
    }

    double cdf(double x) const noexcept {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (sds[i] > 0.0) {
                acc += weights[i] * normal_cdf((x - means[i]) / sds[i]);
            } else if (x >= means[i]) {
                acc += weights[i];
            }
        }
        return acc;
    }

    double density(double x) const noexcept {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (sds[i] > 0.0) acc += weights[i] * normal_pdf((x - means[i]) / sds[i]) / sds[i];
        }
        return acc;
    }
};

struct PosteriorSummary {
    double mean = 0.0;
    double median = 0.0;
    Interval ci50;
    Interval ci95;
    // b / E(beta | b, s). NaN when undefined (every prior scale is 0).
    double shrinkage_factor = std::numeric_limits<double>::quiet_NaN();
    // True when z = 0 and shrinkage_factor holds the z -> 0 limit.
    bool shrinkage_is_limit = false;
    double sign_error_prob = 0.5;
};

namespace detail {

inline double shrink_ratio(double tau) noexcept { return tau * tau / (tau * tau + 1.0); }

// Pr(d = i | z), computed in log space.
inline std::vector<double> component_probabilities(const SnrPrior& prior, double z) {
    const std::size_t k = prior.k();
    std::vector<double> logw(k);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
        const double sd = prior.marginal_sd(i);
        const double u = z / sd;
        logw[i] = std::log(prior.weights()[i]) - std::log(sd) - 0.5 * u * u;
        top = std::max(top, logw[i]);
    }
    double total = 0.0;
    for (auto& w : logw) {
        w = std::exp(w - top);
        total += w;
    }
    for (auto& w : logw) w /= total;
    return logw;
}

// E(SNR | z) / z, well defined at z = 0.
inline double posterior_mean_ratio(const SnrPrior& prior, double z) {
    const auto w = component_probabilities(prior, z);
    double acc = 0.0;
    for (std::size_t i = 0; i < prior.k(); ++i) acc += w[i] * shrink_ratio(prior.scales()[i]);
    return acc;
}

}  // namespace detail

inline PosteriorMixture posterior(const SnrPrior& prior, double b, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InputError("posterior: s must be positive and finite");
    if (!std::isfinite(b)) throw InputError("posterior: b must be finite");
    const double z = b / s;
    PosteriorMixture pm;
    pm.weights = detail::component_probabilities(prior, z);
    pm.means.reserve(prior.k());
    pm.sds.reserve(prior.k());
    for (double tau : prior.scales()) {
        const double ratio = detail::shrink_ratio(tau);
        pm.means.push_back(b * ratio);
        pm.sds.push_back(s * std::sqrt(ratio));
    }
    return pm;
}

// z / E(SNR | z). No value at z = 0 (see shrinkage_limit_at_zero) or when
// every prior scale is 0.
inline std::optional<double> shrinkage_factor(const SnrPrior& prior, double z) {
    if (z == 0.0 || !std::isfinite(z)) return std::nullopt;
    const double ratio = detail::posterior_mean_ratio(prior, z);
    if (!(ratio > 0.0)) return std::nullopt;
    return 1.0 / ratio;
}

// lim_{z -> 0} z / E(SNR | z) = 1 / sum_i w_i(0) k_i.
inline std::optional<double> shrinkage_limit_at_zero(const SnrPrior& prior) {
    const double ratio = detail::posterior_mean_ratio(prior, 0.0);
    if (!(ratio > 0.0)) return std::nullopt;
    return 1.0 / ratio;
}

// Pr(sign(beta) != sign(b) | z) = sum_i w_i(z) Phi(-|z| tau_i / sqrt(tau_i^2 + 1)).
inline double sign_error_prob(const SnrPrior& prior, double z) {
    if (!std::isfinite(z)) throw InputError("sign_error_prob: z must be finite");
    if (z == 0.0) return 0.5;
    const auto w = detail::component_probabilities(prior, z);
    double acc = 0.0;
    for (std::size_t i = 0; i < prior.k(); ++i) {
        const double tau = prior.scales()[i];
        acc += w[i] * normal_cdf(-std::abs(z) * tau / std::sqrt(tau * tau + 1.0));
    }
    return acc;
}

// Solves cdf(x) = q by bisection on a bracket wide enough to hold every
// component; iterates until the bracket cannot shrink further, which is
// tighter than 1e-10 times the largest component sd.
inline double posterior_quantile(const PosteriorMixture& pm, double q) {
    if (!(q > 0.0 && q < 1.0)) throw InputError("posterior_quantile: q must lie in (0, 1)");
    const double max_sd = *std::max_element(pm.sds.begin(), pm.sds.end());
    const auto [min_mean, max_mean] = std::minmax_element(pm.means.begin(), pm.means.end());
    double lo = *min_mean - 40.0 * max_sd;
    double hi = *max_mean + 40.0 * max_sd;
    if (max_sd == 0.0) {
        lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
    }
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (pm.cdf(mid) < q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

inline PosteriorSummary summarize(const SnrPrior& prior, double b, double s) {
    const auto pm = posterior(prior, b, s);
    const double z = b / s;
    PosteriorSummary out;
    out.mean = pm.mean();
    out.median = posterior_quantile(pm, 0.5);
    out.ci50 = {posterior_quantile(pm, 0.25), posterior_quantile(pm, 0.75)};
    out.ci95 = {posterior_quantile(pm, 0.025), posterior_quantile(pm, 0.975)};
    if (z == 0.0) {
        out.shrinkage_is_limit = true;
        if (auto lim = shrinkage_limit_at_zero(prior)) out.shrinkage_factor = *lim;
    } else if (auto f = shrinkage_factor(prior, z)) {
        out.shrinkage_factor = *f;
    }
    out.sign_error_prob = sign_error_prob(prior, z);
    return out;
}

}  // namespace snrshrink
