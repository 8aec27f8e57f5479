#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature over a list of panels.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <sstream>
#include <vector>

#include "snrshrink/error.hpp"

namespace snrshrink {

struct QuadratureOptions {
    double abs_tol = 1e-10;  // per subinterval
    double rel_tol = 1e-12;  // on the total
    std::size_t max_subintervals = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t subintervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (7-point rule).
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    bool operator<(const Segment& other) const noexcept { return error < other.error; }
};

template <typename F>
Segment gauss_kronrod(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

// Integrates f over [breaks.front(), breaks.back()], starting from one
// panel per consecutive pair of breakpoints and bisecting the panel with the
// largest error estimate until every panel meets abs_tol or the total meets
// rel_tol. Throws NumericalError when the subinterval budget runs out.
template <typename F>
QuadratureResult integrate(F&& f, std::vector<double> breaks, const QuadratureOptions& opts = {}) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    QuadratureResult result;
    if (breaks.size() < 2) return result;

    std::priority_queue<detail::Segment> heap;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        auto seg = detail::gauss_kronrod(f, breaks[i], breaks[i + 1]);
        total += seg.value;
        error += seg.error;
        heap.push(seg);
    }

    while (!heap.empty()) {
        const auto worst = heap.top();
        const bool locally_fine = worst.error <= opts.abs_tol;
        const bool globally_fine = error <= opts.rel_tol * std::abs(total);
        if (locally_fine || globally_fine) break;
        if (heap.size() >= opts.max_subintervals) {
            std::ostringstream msg;
            msg << "quadrature did not converge: estimate " << total << ", error " << error << " after "
                << heap.size() << " subintervals";
            throw NumericalError(msg.str());
        }
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in floating point; accept it.
            heap.push({worst.a, worst.b, worst.value, 0.0});
            error -= worst.error;
            continue;
        }
        const auto left = detail::gauss_kronrod(f, worst.a, mid);
        const auto right = detail::gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the panels to shed accumulated update rounding.
    result.subintervals = heap.size();
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    result.value = total;
    result.error = error;
    return result;
}

}  // namespace snrshrink
