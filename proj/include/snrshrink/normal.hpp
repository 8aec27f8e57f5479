#pragma once

// Standard normal density, distribution and quantile functions.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "snrshrink/error.hpp"

namespace snrshrink {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;

// |z| values beyond this are reported as this value.
inline constexpr double kMaxAbsZ = 40.0;

inline double normal_pdf(double x) noexcept {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

inline double normal_log_pdf(double x) noexcept {
    return -0.5 * x * x - kLogSqrt2Pi;
}

// Lower tail, accurate in the far left tail.
inline double normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Upper tail 1 - Phi(x) without cancellation.
inline double normal_sf(double x) noexcept {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

namespace detail {

// Rational approximation of the lower-tail quantile (relative error ~1e-9),
// valid for 0 < p <= 0.5.
inline double lower_quantile_seed(double p) noexcept {
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Seed refined by one Newton step against the erfc-based CDF.
inline double lower_quantile(double p) noexcept {
    double x = lower_quantile_seed(p);
    const double dens = normal_pdf(x);
    if (dens > 1e-300) {
        x -= (normal_cdf(x) - p) / dens;
    }
    return x;
}

}  // namespace detail

// Inverse of normal_cdf on (0, 1).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InputError("normal_quantile: probability must lie in (0, 1)");
    }
    if (p <= 0.5) {
        return detail::lower_quantile(p);
    }
    return -detail::lower_quantile(1.0 - p);
}

// Two-sided p-value to absolute z-value: -Phi^{-1}(p / 2).
// Results above kMaxAbsZ are clamped to kMaxAbsZ; callers compare against it
// to detect clamping.
inline double p_to_abs_z(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw InputError("p_to_abs_z: p must lie in (0, 1]");
    }
    if (p == 1.0) {
        return 0.0;
    }
    const double half = 0.5 * p;
    if (half < std::numeric_limits<double>::min()) {
        return kMaxAbsZ;
    }
    const double z = -detail::lower_quantile(half);
    return z > kMaxAbsZ ? kMaxAbsZ : z;
}

}  // namespace snrshrink
