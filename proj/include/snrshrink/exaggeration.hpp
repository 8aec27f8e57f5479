#pragma once

// Exaggeration ratio (type M error): E(|b / beta| | |b| > c) for
// b ~ N(beta, s^2), with the threshold c in standard-error units.
//
// Dividing by s shows the ratio depends on (beta, s) only through m = |beta|/s:
// with x ~ N(m, 1),
//   E(|x| 1{|x| > c}) = phi(c - m) + phi(c + m) + m [Phi(m - c) - Phi(-m - c)]
//   Pr(|x| > c)       = Phi(m - c) + Phi(-m - c)
// and the ratio is their quotient divided by m. Subtracting m Pr(|x| > c)
// gives the excess over 1 without cancellation:
//   ratio - 1 = [phi(c - m) + phi(c + m) - 2 m Phi(-m - c)] / (m Pr(|x| > c)).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "snrshrink/error.hpp"
#include "snrshrink/normal.hpp"
#include "snrshrink/parallel.hpp"
#include "snrshrink/rng.hpp"

namespace snrshrink {

enum class ExaggerationMethod { analytic, monte_carlo };

inline ExaggerationMethod parse_exaggeration_method(std::string_view name) {
    if (name == "analytic") return ExaggerationMethod::analytic;
    if (name == "monte_carlo") return ExaggerationMethod::monte_carlo;
    throw InputError("unknown method '" + std::string(name) + "' (expected analytic or monte_carlo)");
}

struct ExaggerationQuery {
    double snr = 1.0;  // |beta| / s
    double c = 1.96;   // selection threshold in standard errors
    ExaggerationMethod method = ExaggerationMethod::analytic;

    // Reduces a (beta, s) pair to its signal-to-noise ratio.
    static ExaggerationQuery from_effect(double beta, double s, double c,
                                         ExaggerationMethod method = ExaggerationMethod::analytic) {
        if (!(s > 0.0) || !std::isfinite(s)) throw InputError("exaggeration: s must be positive");
        return {std::abs(beta) / s, c, method};
    }
};

struct MonteCarloOptions {
    std::uint64_t draws = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;  // distinguishes independent cells
};

struct ExaggerationResult {
    double ratio = 1.0;
    double excess = 0.0;          // ratio - 1, computed directly
    double selection_prob = 1.0;  // Pr(|b| > c)
    double std_error = 0.0;       // Monte Carlo standard error of ratio; 0 for analytic
    std::uint64_t selected = 0;   // Monte Carlo draws passing selection
};

namespace detail {

inline void validate(const ExaggerationQuery& q) {
    if (!(q.snr > 0.0) || !std::isfinite(q.snr)) throw InputError("exaggeration: snr must be positive and finite");
    if (!(q.c >= 0.0) || !std::isfinite(q.c)) throw InputError("exaggeration: c must be nonnegative and finite");
}

inline ExaggerationResult exaggeration_analytic(const ExaggerationQuery& q) {
    const double m = q.snr;
    const double c = q.c;
    const double upper = normal_cdf(m - c);
    const double lower = normal_cdf(-m - c);
    const double selection = upper + lower;
    if (!(selection > 1e-300)) throw InputError("exaggeration: selection probability vanishes");
    const double excess_numer = normal_pdf(c - m) + normal_pdf(c + m) - 2.0 * m * lower;
    ExaggerationResult out;
    out.selection_prob = selection;
    out.excess = excess_numer / (m * selection);
    out.ratio = 1.0 + out.excess;
    return out;
}

inline ExaggerationResult exaggeration_monte_carlo(const ExaggerationQuery& q, const MonteCarloOptions& mc) {
    if (mc.draws < 2) throw InputError("exaggeration: Monte Carlo needs at least 2 draws");
    CounterRng rng(mc.seed, mc.stream);
    const double m = q.snr;
    std::uint64_t kept = 0;
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t i = 0; i < mc.draws; ++i) {
        const double ratio = std::abs(m + rng.normal()) / m;
        if (ratio * m > q.c) {
            ++kept;
            const double delta = ratio - mean;
            mean += delta / static_cast<double>(kept);
            m2 += delta * (ratio - mean);
        }
    }
    if (kept < 2) throw InputError("exaggeration: too few Monte Carlo draws pass selection");
    ExaggerationResult out;
    out.ratio = mean;
    out.excess = mean - 1.0;
    out.selection_prob = static_cast<double>(kept) / static_cast<double>(mc.draws);
    out.std_error = std::sqrt(m2 / static_cast<double>(kept - 1) / static_cast<double>(kept));
    out.selected = kept;
    return out;
}

}  // namespace detail

inline ExaggerationResult exaggeration_ratio(const ExaggerationQuery& q, const MonteCarloOptions& mc = {}) {
    detail::validate(q);
    if (q.method == ExaggerationMethod::analytic) return detail::exaggeration_analytic(q);
    return detail::exaggeration_monte_carlo(q, mc);
}

struct ExaggerationCell {
    double snr = 0.0;
    double c = 0.0;
    ExaggerationResult result;
};

// Row-major over snr_grid (outer) and c_grid (inner). Monte Carlo cells use
// their flat index as RNG stream, so any cell reproduces on its own.
inline std::vector<ExaggerationCell> exaggeration_grid(const std::vector<double>& snr_grid,
                                                       const std::vector<double>& c_grid, ExaggerationMethod method,
                                                       const MonteCarloOptions& mc = {}) {
    std::vector<ExaggerationCell> cells(snr_grid.size() * c_grid.size());
    parallel_for(cells.size(), [&](std::size_t idx) {
        const double snr = snr_grid[idx / c_grid.size()];
        const double c = c_grid[idx % c_grid.size()];
        MonteCarloOptions cell_mc = mc;
        cell_mc.stream = idx;
        cells[idx] = {snr, c, exaggeration_ratio({snr, c, method}, cell_mc)};
    });
    return cells;
}

}  // namespace snrshrink
