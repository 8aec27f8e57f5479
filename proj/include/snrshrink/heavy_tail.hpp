#pragma once

// Posterior inference under a Student-t prior on theta = beta / s, i.e. a
// t_nu(0, m s) prior on beta whose scale follows the standard error. The
// likelihood is theta | z ~ N(z, 1); all posterior quantities come from
// adaptive quadrature of phi(z - theta) t_nu(theta; 0, m).
//
// Unlike a fixed-scale normal prior, whose posterior mean z tau^2/(tau^2+1)
// stays shrunk for every z, the t prior's flat tails let the posterior of
// theta - z approach N(0, 1) as |z| grows.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "snrshrink/error.hpp"
#include "snrshrink/normal.hpp"
#include "snrshrink/posterior.hpp"
#include "snrshrink/quadrature.hpp"

namespace snrshrink {

struct TPriorSpec {
    double nu = 1.0;                // degrees of freedom; 1 is the Cauchy prior
    double location = 0.0;          // fixed at 0
    double scale_multiplier = 1.0;  // prior scale on beta is scale_multiplier * s

    void validate() const {
        if (!(nu > 0.0) || !std::isfinite(nu)) throw InputError("t prior: nu must be positive");
        if (location != 0.0) throw InputError("t prior: location must be 0");
        if (!(scale_multiplier > 0.0) || !std::isfinite(scale_multiplier)) {
            throw InputError("t prior: scale multiplier must be positive");
        }
    }
};

inline double t_log_density(double x, double nu, double scale) noexcept {
    const double u = x / scale;
    return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * std::numbers::pi) -
           std::log(scale) - 0.5 * (nu + 1.0) * std::log1p(u * u / nu);
}

// Posterior of theta = beta / s for one observed z. The prior is symmetric,
// so the work is done for |z| and mirrored for negative z.
class TPosterior {
public:
    TPosterior(const TPriorSpec& spec, double z) : spec_(spec), z_(z), abs_z_(std::abs(z)) {
        spec_.validate();
        if (!std::isfinite(z)) throw InputError("t posterior: z must be finite");
        log_offset_ = t_log_density(abs_z_, spec_.nu, spec_.scale_multiplier);

        lower_ = -12.0;
        upper_ = abs_z_ + 12.0;
        // Tail mass beyond [lower_, upper_] is at most max(prior) * Phi(-distance).
        const double prior_peak = std::exp(t_log_density(0.0, spec_.nu, spec_.scale_multiplier) - log_offset_);
        normalizer_ = integrate_raw(lower_, upper_);
        while (prior_peak * normal_sf(abs_z_ - lower_) > 1e-12 * normalizer_ ||
               prior_peak * normal_sf(upper_ - abs_z_) > 1e-12 * normalizer_) {
            lower_ -= 4.0;
            upper_ += 4.0;
            normalizer_ = integrate_raw(lower_, upper_);
            if (upper_ - lower_ > 1e4 + abs_z_) throw NumericalError("t posterior: tail bound did not converge");
        }
        if (!(normalizer_ > 0.0) || !std::isfinite(normalizer_)) {
            throw NumericalError("t posterior: normalizing constant is not positive and finite");
        }
    }

    double z() const noexcept { return z_; }

    // Normalized posterior density of theta.
    double density(double theta) const { return raw(mirror(theta)) / normalizer_; }

    double cdf(double theta) const {
        // For z < 0, P(theta <= t | z) = P(theta >= -t | |z|).
        if (z_ < 0.0) return upper_tail(-theta);
        return lower_tail(theta);
    }

    double quantile(double q) const {
        if (!(q > 0.0 && q < 1.0)) throw InputError("t posterior quantile: q must lie in (0, 1)");
        if (z_ < 0.0) return -positive_quantile(1.0 - q);
        if (z_ == 0.0) {
            // symmetric about 0: exact median, mirrored upper quantiles
            if (q == 0.5) return 0.0;
            if (q > 0.5) return -positive_quantile(1.0 - q);
        }
        return positive_quantile(q);
    }

    double mean() const {
        const double m = integrate_moment(1) / normalizer_;
        return z_ < 0.0 ? -m : m;
    }

    double variance() const {
        const double m1 = integrate_moment(1) / normalizer_;
        const double m2 = integrate_moment(2) / normalizer_;
        return m2 - m1 * m1;
    }

private:
    double mirror(double theta) const noexcept { return z_ < 0.0 ? -theta : theta; }

    // Unnormalized density for |z|, scaled so values near theta = |z| are O(1).
    double raw(double theta) const noexcept {
        const double d = abs_z_ - theta;
        return std::exp(-0.5 * d * d + t_log_density(theta, spec_.nu, spec_.scale_multiplier) - log_offset_);
    }

    std::vector<double> breakpoints(double a, double b) const {
        const double m = spec_.scale_multiplier;
        std::vector<double> candidates{0.0, -m, m, -10 * m, 10 * m, abs_z_, abs_z_ - 1, abs_z_ + 1,
                                       abs_z_ - 4, abs_z_ + 4, abs_z_ - 8, abs_z_ + 8};
        std::vector<double> out{a, b};
        for (double c : candidates) {
            if (c > a && c < b) out.push_back(c);
        }
        return out;
    }

    static QuadratureOptions options() { return {1e-14, 1e-13, 4000}; }

    double integrate_raw(double a, double b) const {
        if (!(b > a)) return 0.0;
        return integrate([this](double t) { return raw(t); }, breakpoints(a, b), options()).value;
    }

    double integrate_moment(int power) const {
        return integrate([this, power](double t) { return std::pow(t, power) * raw(t); }, breakpoints(lower_, upper_),
                         options())
            .value;
    }

    double lower_tail(double t) const {
        if (t <= lower_) return 0.0;
        if (t >= upper_) return 1.0;
        return std::clamp(integrate_raw(lower_, t) / normalizer_, 0.0, 1.0);
    }

    double upper_tail(double t) const {
        if (t <= lower_) return 1.0;
        if (t >= upper_) return 0.0;
        return std::clamp(integrate_raw(t, upper_) / normalizer_, 0.0, 1.0);
    }

    // Quantile for the |z| posterior by bisection on its CDF.
    double positive_quantile(double q) const {
        double lo = lower_;
        double hi = upper_;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) break;
            if (lower_tail(mid) < q) {
                lo = mid;
            } else {
                hi = mid;
            }
            if (hi - lo < 1e-12 * std::max(1.0, std::abs(mid))) break;
        }
        return lo + 0.5 * (hi - lo);
    }

    TPriorSpec spec_;
    double z_;
    double abs_z_;
    double log_offset_ = 0.0;
    double lower_ = 0.0;
    double upper_ = 0.0;
    double normalizer_ = 1.0;
};

inline double t_posterior_density(const TPriorSpec& spec, double z, double theta) {
    return TPosterior(spec, z).density(theta);
}

// Posterior summary for beta plus the classical (flat prior) estimate and
// 95% interval b +- 1.96 s for comparison.
struct TPosteriorReport {
    PosteriorSummary posterior;
    double classical_estimate = 0.0;
    Interval classical_ci95;
};

inline TPosteriorReport t_posterior_summary(const TPriorSpec& spec, double b, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InputError("t posterior: s must be positive and finite");
    if (!std::isfinite(b)) throw InputError("t posterior: b must be finite");
    const double z = b / s;
    const TPosterior post(spec, z);

    TPosteriorReport out;
    auto& summary = out.posterior;
    summary.mean = s * post.mean();
    summary.median = s * post.quantile(0.5);
    summary.ci50 = {s * post.quantile(0.25), s * post.quantile(0.75)};
    summary.ci95 = {s * post.quantile(0.025), s * post.quantile(0.975)};
    if (z == 0.0) {
        // z / E(theta | z) -> 1 / Var(theta | z = 0), since dE(theta|z)/dz = Var(theta|z).
        summary.shrinkage_is_limit = true;
        summary.shrinkage_factor = 1.0 / post.variance();
        summary.sign_error_prob = 0.5;
    } else {
        summary.shrinkage_factor = b / summary.mean;
        summary.sign_error_prob = z > 0.0 ? post.cdf(0.0) : 1.0 - post.cdf(0.0);
    }
    const double half_width = -normal_quantile(0.025) * s;
    out.classical_estimate = b;
    out.classical_ci95 = {b - half_width, b + half_width};
    return out;
}

struct ConsistencyRow {
    double z = 0.0;
    double median = 0.0;
    Interval ci50;
    Interval ci95;
    double mean = 0.0;
    double shrinkage = 0.0;
    bool shrinkage_is_limit = false;
};

// Posterior summaries of theta on a grid of z values (s = 1).
inline std::vector<ConsistencyRow> consistency_curve(const TPriorSpec& spec, const std::vector<double>& z_grid) {
    std::vector<ConsistencyRow> rows(z_grid.size());
    parallel_for(z_grid.size(), [&](std::size_t i) {
        const auto report = t_posterior_summary(spec, z_grid[i], 1.0);
        const auto& p = report.posterior;
        rows[i] = {z_grid[i], p.median, p.ci50, p.ci95, p.mean, p.shrinkage_factor, p.shrinkage_is_limit};
    });
    return rows;
}

}  // namespace snrshrink
