#pragma once

// Corpus checks for equivariant inference: under an s-independent symmetric
// SNR prior, s and z = b/s are independent, z is symmetric about 0, and
// s and |b| are positively correlated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "snrshrink/data_ingest.hpp"
#include "snrshrink/error.hpp"
#include "snrshrink/normal.hpp"

namespace snrshrink {

enum class Verdict { pass, warn, not_applicable };

inline std::string_view verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::warn: return "warn";
        case Verdict::not_applicable: return "n/a";
    }
    return "?";
}

struct TestStatistic {
    double statistic = 0.0;
    double p_value = 1.0;
};

struct DiagnosticReport {
    std::size_t n = 0;
    std::optional<TestStatistic> spearman_s_vs_z;     // rank correlation; normal approximation p-value
    std::optional<TestStatistic> symmetry;             // sign-balance z-statistic; exact binomial p-value
    std::optional<TestStatistic> pearson_s_vs_abs_b;  // correlation; t-test p-value
    Verdict independence = Verdict::not_applicable;
    Verdict symmetric = Verdict::not_applicable;
    Verdict positive_correlation = Verdict::not_applicable;
};

// Advisory significance level for the verdicts.
inline constexpr double kDiagnosticAlpha = 0.05;
inline constexpr std::size_t kMinDiagnosticRecords = 10;

// Ranks starting at 1; ties share their average rank.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

inline double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

// Spearman correlation with two-sided p-value from r sqrt(n - 1) ~ N(0, 1).
inline TestStatistic spearman_test(const std::vector<double>& x, const std::vector<double>& y) {
    const double r = pearson_correlation(average_ranks(x), average_ranks(y));
    const double stat = r * std::sqrt(static_cast<double>(x.size()) - 1.0);
    return {r, std::min(1.0, 2.0 * normal_sf(std::abs(stat)))};
}

// Pearson correlation with the two-sided t-test p-value on n - 2 df.
inline TestStatistic pearson_test(const std::vector<double>& x, const std::vector<double>& y) {
    const double r = pearson_correlation(x, y);
    const double df = static_cast<double>(x.size()) - 2.0;
    if (std::abs(r) >= 1.0) return {r, 0.0};
    const double t = r * std::sqrt(df / (1.0 - r * r));
    const boost::math::students_t dist(df);
    return {r, std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))))};
}

// Exact two-sided binomial(n, 1/2) p-value for observing `positives`.
inline double sign_test_p_value(std::size_t positives, std::size_t n) {
    if (n == 0) return 1.0;
    const std::size_t tail = std::min(positives, n - positives);
    const double log_half_n = static_cast<double>(n) * std::log(0.5);
    const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i <= tail; ++i) {
        const double log_term = lg_n1 - std::lgamma(static_cast<double>(i) + 1.0) -
                                std::lgamma(static_cast<double>(n - i) + 1.0) + log_half_n;
        acc += std::exp(log_term);
    }
    return std::min(1.0, 2.0 * acc);
}

// Sign balance of z about 0; zeros are dropped.
inline TestStatistic symmetry_test(const std::vector<double>& z) {
    std::size_t pos = 0, neg = 0;
    for (double v : z) {
        if (v > 0.0) ++pos;
        else if (v < 0.0) ++neg;
    }
    const std::size_t n = pos + neg;
    const double stat = n == 0 ? 0.0
                               : (static_cast<double>(pos) - static_cast<double>(neg)) / std::sqrt(static_cast<double>(n));
    return {stat, sign_test_p_value(pos, n)};
}

inline DiagnosticReport diagnose(const Corpus& corpus) {
    DiagnosticReport report;
    report.n = corpus.size();
    if (corpus.magnitude_only()) return report;

    std::vector<double> signed_z;
    std::vector<double> s, z, abs_b;
    for (const auto& r : corpus.records()) {
        if (r.magnitude_only()) continue;
        signed_z.push_back(r.z());
        if (r.has_b_and_s()) {
            s.push_back(r.s());
            z.push_back(r.z());
            abs_b.push_back(std::abs(r.b()));
        }
    }

    if (signed_z.size() >= kMinDiagnosticRecords) {
        report.symmetry = symmetry_test(signed_z);
        report.symmetric = report.symmetry->p_value < kDiagnosticAlpha ? Verdict::warn : Verdict::pass;
    }
    if (s.size() >= kMinDiagnosticRecords) {
        report.spearman_s_vs_z = spearman_test(s, z);
        report.independence = report.spearman_s_vs_z->p_value < kDiagnosticAlpha ? Verdict::warn : Verdict::pass;
        report.pearson_s_vs_abs_b = pearson_test(s, abs_b);
        const bool positive = report.pearson_s_vs_abs_b->statistic > 0.0 &&
                              report.pearson_s_vs_abs_b->p_value < kDiagnosticAlpha;
        report.positive_correlation = positive ? Verdict::pass : Verdict::warn;
    }
    if (signed_z.size() < kMinDiagnosticRecords && s.size() < kMinDiagnosticRecords) {
        throw InputError("diagnose: need at least 10 records with signed z-values");
    }
    return report;
}

}  // namespace snrshrink
