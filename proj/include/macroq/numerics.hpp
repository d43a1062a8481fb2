#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "macroq/errors.hpp"

namespace macroq::numerics {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

inline constexpr double default_rel_tol = 1e-9;
inline constexpr unsigned default_max_depth = 20;

/// Adaptive Gauss-Kronrod (7/15) on [a, b], split at the given interior
/// breakpoints. Throws QuadratureError when the achieved error exceeds the
/// relative tolerance measured against the L1 norm of the integrand.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol = default_rel_tol,
                           std::span<const double> breakpoints = {}) {
    if (b <= a) {
        return {};
    }
    std::vector<double> nodes{a};
    for (double p : breakpoints) {
        if (p > a && p < b) {
            nodes.push_back(p);
        }
    }
    nodes.push_back(b);
    std::sort(nodes.begin(), nodes.end());

    QuadratureResult total;
    double l1_total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (nodes[i + 1] <= nodes[i]) {
            continue;
        }
        // Each segment is mapped onto [0, 1]: the Kronrod error estimate
        // does not scale with the width of short intervals otherwise.
        const double lo = nodes[i];
        const double width = nodes[i + 1] - lo;
        auto mapped = [&](double u) { return f(lo + width * u); };
        double err = 0.0;
        double l1 = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            mapped, 0.0, 1.0, default_max_depth, rel_tol, &err, &l1);
        total.value += width * v;
        total.error_estimate += width * err;
        l1_total += width * l1;
    }
    if (!std::isfinite(total.value) || total.error_estimate > 10.0 * rel_tol * l1_total + 1e-300) {
        throw QuadratureError("adaptive quadrature did not converge", total.error_estimate);
    }
    return total;
}

struct RootResult {
    double x = 0.0;
    std::uintmax_t iterations = 0;
};

/// Bisection on a bracket [lo, hi] with f(lo) <= 0 <= f(hi). Runs until the
/// bracket is a few ulps wide.
template <class F>
RootResult bisect(F&& f, double lo, double hi) {
    std::uintmax_t max_iter = 2000;
    auto tol = [](double a, double b) {
        return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    };
    const auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol, max_iter);
    return {0.5 * (a + b), max_iter};
}

} // namespace macroq::numerics
