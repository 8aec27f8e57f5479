#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "snrshrink/error.hpp"
#include "snrshrink/posterior.hpp"

using namespace snrshrink;

namespace {

const SnrPrior kPsych = SnrPrior::two_component(0.57, 0.7, 4.0);
const SnrPrior kCochrane = SnrPrior::two_component(0.48, 2.1, 3.6);

void expect_summary_near(const PosteriorSummary& a, const PosteriorSummary& b, double tol) {
    auto close = [tol](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); };
    EXPECT_PRED2(close, a.mean, b.mean);
    EXPECT_PRED2(close, a.median, b.median);
    EXPECT_PRED2(close, a.ci50.lower, b.ci50.lower);
    EXPECT_PRED2(close, a.ci50.upper, b.ci50.upper);
    EXPECT_PRED2(close, a.ci95.lower, b.ci95.lower);
    EXPECT_PRED2(close, a.ci95.upper, b.ci95.upper);
    EXPECT_PRED2(close, a.shrinkage_factor, b.shrinkage_factor);
    EXPECT_PRED2(close, a.sign_error_prob, b.sign_error_prob);
}

// Summary of beta' = c beta computed from the summary of beta.
PosteriorSummary transform(const PosteriorSummary& s, double c) {
    PosteriorSummary out = s;
    out.mean = c * s.mean;
    if (c > 0) {
        out.median = c * s.median;
        out.ci50 = {c * s.ci50.lower, c * s.ci50.upper};
        out.ci95 = {c * s.ci95.lower, c * s.ci95.upper};
    } else {
        out.median = c * s.median;
        out.ci50 = {c * s.ci50.upper, c * s.ci50.lower};
        out.ci95 = {c * s.ci95.upper, c * s.ci95.lower};
    }
    return out;
}

}  // namespace

TEST(Posterior, SingleComponentClosedForm) {
    for (double tau : {0.3, 1.0, 2.5}) {
        const auto pm = posterior(SnrPrior::single(tau), 1.7, 0.4);
        ASSERT_EQ(pm.weights.size(), 1u);
        EXPECT_EQ(pm.weights[0], 1.0);
        EXPECT_DOUBLE_EQ(pm.means[0], 1.7 * tau * tau / (tau * tau + 1.0));
        EXPECT_DOUBLE_EQ(pm.sds[0], 0.4 * std::sqrt(tau * tau / (tau * tau + 1.0)));
    }
}

TEST(Posterior, PsychologyAt196) {
    const auto pm = posterior(kPsych, 1.96, 1.0);
    EXPECT_NEAR(pm.weights[0], 0.580, 5e-4);
    EXPECT_NEAR(pm.means[0], 0.6446, 1e-4);
    EXPECT_NEAR(pm.means[1], 1.8447, 1e-4);
    EXPECT_NEAR(pm.weights[0] + pm.weights[1], 1.0, 1e-12);
    EXPECT_NEAR(pm.mean(), oracle::posterior_mean({{0.57, 0.43}, {0.7, 4.0}}, 1.96, 1.0), 1e-10);
}

TEST(Posterior, ZeroEstimateIsSymmetric) {
    for (const auto& prior : {kPsych, kCochrane}) {
        const auto pm = posterior(prior, 0.0, 2.0);
        EXPECT_EQ(pm.mean(), 0.0);
        for (double x : {0.3, 1.0, 4.0}) EXPECT_NEAR(pm.cdf(x) + pm.cdf(-x), 1.0, 1e-15);
    }
}

TEST(Posterior, WeightsAtZeroArePriorPredictiveProportions) {
    for (const auto& prior : {kPsych, kCochrane, SnrPrior({0.2, 0.5, 0.3}, {0.0, 1.0, 5.0})}) {
        const auto pm = posterior(prior, 0.0, 1.3);
        double total = 0.0;
        std::vector<double> expect;
        for (std::size_t i = 0; i < prior.k(); ++i) {
            const double t = prior.scales()[i];
            expect.push_back(prior.weights()[i] / std::sqrt(t * t + 1.0));
            total += expect.back();
        }
        for (std::size_t i = 0; i < prior.k(); ++i) EXPECT_NEAR(pm.weights[i], expect[i] / total, 1e-15);
    }
}

TEST(Posterior, ExtremeZDoesNotUnderflow) {
    const auto pm = posterior(kPsych, 45.0, 1.0);
    EXPECT_NEAR(pm.weights[1], 1.0, 1e-12);
    EXPECT_TRUE(std::isfinite(pm.mean()));
    const auto sf = shrinkage_factor(kPsych, 200.0);
    ASSERT_TRUE(sf);
    EXPECT_NEAR(*sf, 17.0 / 16.0, 1e-12);
}

TEST(Posterior, IntegratesToOne) {
    for (const auto& [prior, b, s] : {std::tuple{kPsych, 1.96, 1.0}, std::tuple{kCochrane, -7.0, 2.5},
                                      std::tuple{SnrPrior::single(0.2), 0.1, 0.01}}) {
        const auto pm = posterior(prior, b, s);
        std::vector<double> breaks{-60.0 * s + b, 60.0 * s + b};
        for (std::size_t i = 0; i < pm.means.size(); ++i) {
            for (double d : {-8.0, -2.0, 0.0, 2.0, 8.0}) breaks.push_back(pm.means[i] + d * pm.sds[i]);
        }
        EXPECT_NEAR(oracle::integrate([&](double x) { return pm.density(x); }, breaks), 1.0, 1e-9);
    }
}

TEST(Posterior, MeanMatchesBruteForceBayesOnRandomTriples) {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const std::size_t k = 1 + static_cast<std::size_t>(unit(gen) * 3.0);
        std::vector<double> w, sc;
        for (std::size_t i = 0; i < k; ++i) {
            w.push_back(0.05 + unit(gen));
            sc.push_back(0.1 + 6.0 * unit(gen));
        }
        double total = 0.0;
        for (double x : w) total += x;
        for (double& x : w) x /= total;
        const SnrPrior prior(w, sc);
        const double s = std::exp(-3.0 + 6.0 * unit(gen));
        const double b = s * (-8.0 + 16.0 * unit(gen));
        const double expect = oracle::posterior_mean({prior.weights(), prior.scales()}, b, s);
        EXPECT_NEAR(posterior(prior, b, s).mean(), expect, 1e-6 * std::abs(expect) + 1e-300) << "trial " << t;
    }
}

TEST(ShrinkageFactor, Anchors) {
    EXPECT_NEAR(*shrinkage_factor(kPsych, 1.96), 1.7, 0.05);
    EXPECT_NEAR(*shrinkage_factor(kCochrane, 1.96), 1.15, 0.02);
    for (double z : {-3.0, 0.1, 1.0, 7.0}) EXPECT_DOUBLE_EQ(*shrinkage_factor(SnrPrior::single(1.0), z), 2.0);
}

TEST(ShrinkageFactor, EvenAtLeastOneAndUndefinedAtZero) {
    for (const auto& prior : {kPsych, kCochrane}) {
        for (double z = 0.05; z < 10.0; z += 0.25) {
            const double f = *shrinkage_factor(prior, z);
            EXPECT_EQ(f, *shrinkage_factor(prior, -z));
            EXPECT_GE(f, 1.0);
        }
        EXPECT_FALSE(shrinkage_factor(prior, 0.0).has_value());
    }
    EXPECT_FALSE(shrinkage_factor(SnrPrior::single(0.0), 1.0).has_value());
}

TEST(ShrinkageFactor, LimitAtZero) {
    const auto lim = shrinkage_limit_at_zero(kPsych);
    ASSERT_TRUE(lim);
    EXPECT_NEAR(*lim, *shrinkage_factor(kPsych, 1e-6), 1e-9);
    const auto s = summarize(kPsych, 0.0, 1.0);
    EXPECT_TRUE(s.shrinkage_is_limit);
    EXPECT_EQ(s.shrinkage_factor, *lim);
}

TEST(SignError, AnchorsAndSymmetry) {
    EXPECT_NEAR(sign_error_prob(kPsych, 1.96), 0.088, 0.002);
    EXPECT_NEAR(sign_error_prob(kCochrane, 1.96), 0.034, 0.001);
    EXPECT_EQ(sign_error_prob(kPsych, 0.0), 0.5);
    EXPECT_EQ(sign_error_prob(kCochrane, 0.0), 0.5);
    for (double z = 0.1; z < 8.0; z += 0.3) {
        const double e = sign_error_prob(kPsych, z);
        EXPECT_EQ(e, sign_error_prob(kPsych, -z));
        EXPECT_GE(e, 0.0);
        EXPECT_LE(e, 0.5);
    }
}

TEST(SignError, MatchesPosteriorMass) {
    for (double z : {0.5, 1.96, 3.0}) {
        const auto pm = posterior(kCochrane, z, 1.0);
        EXPECT_NEAR(sign_error_prob(kCochrane, z), pm.cdf(0.0), 1e-15);
        EXPECT_NEAR(sign_error_prob(kCochrane, -z), 1.0 - posterior(kCochrane, -z, 1.0).cdf(0.0), 1e-15);
    }
}

TEST(Quantile, Examples) {
    const PosteriorMixture normal{{1.0}, {0.0}, {1.0}};
    EXPECT_NEAR(posterior_quantile(normal, 0.975), 1.959964, 1e-6);
    EXPECT_NEAR(posterior_quantile(normal, 0.975), oracle::quantile(0.975), 1e-10);
    const PosteriorMixture two{{0.5, 0.5}, {-1.0, 1.0}, {1.0, 1.0}};
    EXPECT_NEAR(posterior_quantile(two, 0.5), 0.0, 1e-10);
    EXPECT_THROW(posterior_quantile(normal, 0.0), InputError);
    EXPECT_THROW(posterior_quantile(normal, 1.0), InputError);
}

TEST(Quantile, MonotoneAndInvertsCdf) {
    const auto pm = posterior(kPsych, 2.7, 0.8);
    double prev = -INFINITY;
    for (double q = 0.001; q < 1.0; q += 0.01) {
        const double x = posterior_quantile(pm, q);
        EXPECT_GE(x, prev);
        EXPECT_NEAR(pm.cdf(x), q, 1e-12);
        prev = x;
    }
}

TEST(Quantile, PointMassComponent) {
    const auto pm = posterior(SnrPrior({0.5, 0.5}, {0.0, 2.0}), 0.5, 1.0);
    EXPECT_EQ(posterior_quantile(pm, 0.4), 0.0);
}

TEST(Quantile, MedianMatchesMonteCarloPosterior) {
    // draw the component, then beta from it
    const auto pm = posterior(kPsych, 1.96, 1.0);
    std::mt19937_64 gen(77);
    std::bernoulli_distribution first(pm.weights[0]);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = 10'000'000;
    std::vector<double> draws(n);
    for (auto& d : draws) {
        const std::size_t i = first(gen) ? 0 : 1;
        d = pm.means[i] + pm.sds[i] * normal(gen);
    }
    std::nth_element(draws.begin(), draws.begin() + n / 2, draws.end());
    const double mc_median = draws[n / 2];
    const double median = posterior_quantile(pm, 0.5);
    // sd of a sample median: 1 / (2 f(m) sqrt(n))
    const double se = 1.0 / (2.0 * pm.density(median) * std::sqrt(static_cast<double>(n)));
    EXPECT_NEAR(mc_median, median, 3.0 * se);
}

TEST(Summarize, PsychologyAt196) {
    const auto s = summarize(kPsych, 1.96, 1.0);
    EXPECT_NEAR(s.mean, oracle::posterior_mean({{0.57, 0.43}, {0.7, 4.0}}, 1.96, 1.0), 1e-12);
    // the four-digit hand value 1.1487 is off in its last digit; 1.96 / 1.7065 = 1.14855
    EXPECT_NEAR(s.mean, 1.1487, 5e-4);
    EXPECT_NEAR(s.shrinkage_factor, 1.706, 1e-3);
    EXPECT_NEAR(s.sign_error_prob, 0.088, 1e-3);
    EXPECT_FALSE(s.shrinkage_is_limit);
    EXPECT_TRUE(s.ci95.contains(s.ci50));
    EXPECT_TRUE(s.ci50.contains(s.median));
}

TEST(Summarize, CochraneRescaled) {
    const auto a = summarize(kCochrane, 1.96, 1.0);
    const auto b = summarize(kCochrane, 3.92, 2.0);
    EXPECT_NEAR(b.shrinkage_factor, a.shrinkage_factor, 1e-12);
    EXPECT_NEAR(b.sign_error_prob, a.sign_error_prob, 1e-15);
    EXPECT_NEAR(b.mean, 2.0 * a.mean, 1e-12);
}

TEST(Summarize, SignFlip) {
    for (const auto& prior : {kPsych, kCochrane}) {
        const auto pos = summarize(prior, 1.96, 1.0);
        const auto neg = summarize(prior, -1.96, 1.0);
        expect_summary_near(neg, transform(pos, -1.0), 1e-12);
    }
}

TEST(Summarize, EquivarianceUnderLinearRescaling) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& prior : {kPsych, kCochrane, SnrPrior({0.3, 0.3, 0.4}, {0.5, 1.5, 5.0})}) {
        for (int t = 0; t < 10; ++t) {
            const double s = 0.1 + 3.0 * unit(gen);
            const double b = s * (-6.0 + 12.0 * unit(gen));
            const auto base = summarize(prior, b, s);
            for (double c : {-3.0, -1.0, 0.5, 10.0}) {
                const auto scaled = summarize(prior, c * b, std::abs(c) * s);
                expect_summary_near(scaled, transform(base, c), 1e-9);
                const auto pm = posterior(prior, b, s);
                const auto pmc = posterior(prior, c * b, std::abs(c) * s);
                for (std::size_t i = 0; i < prior.k(); ++i) {
                    EXPECT_NEAR(pmc.weights[i], pm.weights[i], 1e-12);
                    EXPECT_NEAR(pmc.means[i], c * pm.means[i], 1e-12 * std::max(1.0, std::abs(c * pm.means[i])));
                    EXPECT_NEAR(pmc.sds[i], std::abs(c) * pm.sds[i], 1e-12 * std::max(1.0, std::abs(c) * pm.sds[i]));
                }
            }
        }
    }
}

TEST(Posterior, RejectsBadInputs) {
    EXPECT_THROW(posterior(kPsych, 1.0, 0.0), InputError);
    EXPECT_THROW(posterior(kPsych, 1.0, -2.0), InputError);
    EXPECT_THROW(posterior(kPsych, NAN, 1.0), InputError);
    EXPECT_THROW(sign_error_prob(kPsych, INFINITY), InputError);
}

TEST(NormalPrior, PosteriorMeanIsExactlyTheShrunkEstimate) {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const double b = -20.0 + 40.0 * unit(gen);
        const double tau = 0.01 + 10.0 * unit(gen);
        const double expect = b * (tau * tau / (tau * tau + 1.0));
        EXPECT_EQ(posterior(SnrPrior::single(tau), b, 1.0).mean(), expect);
    }
}
