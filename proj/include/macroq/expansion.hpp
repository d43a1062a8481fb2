#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "macroq/collapse_models.hpp"
#include "macroq/errors.hpp"
#include "macroq/numerics.hpp"
#include "macroq/scenario.hpp"

// Free expansion of the trapped wave packet after release and the decoherence
// it accumulates. The accumulated exponent Gamma(tau) integrates the rate law
// at the instantaneous separation 2 sigma(t); the coherent expansion time
// (CET) solves 4 Gamma(CET) = 1 and the coherent expansion distance is
// CED = v_m CET.

namespace macroq {

struct ExpansionKinematics {
    double x0 = 0.0;  // m
    double v_m = 0.0; // m/s
};

inline void validate(const ExpansionKinematics& kin) {
    detail::require(kin.x0 > 0.0 && kin.v_m > 0.0, "expansion kinematics: x0 and v_m must be > 0");
}

inline ExpansionKinematics kinematics_for(const Particle& particle, const Trap& trap) {
    const double m = particle_mass(particle);
    const double x0 = ground_state_width(m, trap.angular_frequency);
    return {x0, expansion_velocity(m, x0)};
}

/// A rate law not expressible as Lambda dx^2 + const. `kinks` lists
/// separations where the law is not smooth (used to split the quadrature).
struct GeneralRate {
    RateFunction rate;
    std::vector<double> kinks;
};

struct DecoherenceSpec {
    double quadratic_lambda = 0.0; // 1/(m^2 s)
    double constant_rate = 0.0;    // 1/s
    std::optional<GeneralRate> general_rate;

    double rate_at(double separation) const {
        double total = quadratic_lambda * separation * separation + constant_rate;
        if (general_rate) {
            total += general_rate->rate(separation);
        }
        return total;
    }

    bool is_zero() const { return quadratic_lambda == 0.0 && constant_rate == 0.0 && !general_rate; }
};

inline void validate(const DecoherenceSpec& spec) {
    detail::require(spec.quadratic_lambda >= 0.0 && spec.constant_rate >= 0.0,
                    "decoherence spec components must be >= 0");
    detail::require(std::isfinite(spec.quadratic_lambda) && std::isfinite(spec.constant_rate),
                    "decoherence spec components must be finite");
}

inline double sigma(double t, const ExpansionKinematics& kin) {
    detail::require(t >= 0.0, "sigma: t must be >= 0");
    return std::hypot(kin.x0, kin.v_m * t);
}

namespace detail {

inline constexpr double general_rate_rel_tol = 1e-11;

/// Times at which 2 sigma(t) crosses the given separations.
inline std::vector<double> crossing_times(const std::vector<double>& separations, const ExpansionKinematics& kin) {
    std::vector<double> times;
    for (double s : separations) {
        const double half = 0.5 * s;
        if (half > kin.x0) {
            times.push_back(std::sqrt(half * half - kin.x0 * kin.x0) / kin.v_m);
        }
    }
    return times;
}

inline double closed_form_gamma(double tau, double lambda, double rate, const ExpansionKinematics& kin) {
    return 4.0 * kin.x0 * kin.x0 * lambda * tau + 4.0 / 3.0 * kin.v_m * kin.v_m * lambda * tau * tau * tau
           + rate * tau;
}

} // namespace detail

/// Gamma(tau): closed form for the quadratic and constant parts, adaptive
/// quadrature of F(2 sigma(t)) for a general rate law.
inline double gamma(double tau, const DecoherenceSpec& spec, const ExpansionKinematics& kin) {
    detail::require(tau >= 0.0, "gamma: tau must be >= 0");
    validate(spec);
    validate(kin);
    double total = detail::closed_form_gamma(tau, spec.quadratic_lambda, spec.constant_rate, kin);
    if (spec.general_rate && tau > 0.0) {
        const auto& rate = spec.general_rate->rate;
        const auto breaks = detail::crossing_times(spec.general_rate->kinks, kin);
        total += numerics::integrate([&](double t) { return rate(2.0 * std::hypot(kin.x0, kin.v_m * t)); }, 0.0,
                                     tau, detail::general_rate_rel_tol, breaks)
                     .value;
    }
    return total;
}

/// Gamma(tau) with every component integrated numerically. Independent of
/// the closed form; used to cross-check it.
inline double gamma_by_quadrature(double tau, const DecoherenceSpec& spec, const ExpansionKinematics& kin) {
    detail::require(tau >= 0.0, "gamma_by_quadrature: tau must be >= 0");
    validate(spec);
    validate(kin);
    std::vector<double> breaks;
    if (spec.general_rate) {
        breaks = detail::crossing_times(spec.general_rate->kinks, kin);
    }
    return numerics::integrate([&](double t) { return spec.rate_at(2.0 * std::hypot(kin.x0, kin.v_m * t)); }, 0.0,
                               tau, detail::general_rate_rel_tol, breaks)
        .value;
}

inline constexpr double cet_bracket_start = 1e-12;  // s
inline constexpr double cet_upper_cap = 1e9;        // s
inline constexpr double cet_lower_floor = 1e-300;   // s

/// Coherent expansion time. std::nullopt means infinite: either there is no
/// decoherence at all or 4 Gamma stays below 1 up to cet_upper_cap.
inline std::optional<double> solve_cet(const DecoherenceSpec& spec, const ExpansionKinematics& kin) {
    validate(spec);
    validate(kin);
    if (spec.is_zero()) {
        return std::nullopt;
    }
    auto residual = [&](double tau) { return 4.0 * gamma(tau, spec, kin) - 1.0; };

    double hi = cet_bracket_start;
    if (residual(hi) >= 0.0) {
        double lo = hi;
        while (residual(lo) >= 0.0) {
            hi = lo;
            lo *= 0.5;
            if (lo < cet_lower_floor) {
                return lo;
            }
        }
        return numerics::bisect(residual, lo, hi).x;
    }
    while (residual(hi) < 0.0) {
        hi *= 2.0;
        if (hi > cet_upper_cap) {
            return std::nullopt;
        }
    }
    return numerics::bisect(residual, 0.5 * hi, hi).x;
}

/// Closed-form CET for a spec without a general rate: the positive root of
/// (16/3) v^2 L t^3 + (16 x0^2 L + 4 F) t - 1 = 0.
inline std::optional<double> solve_cet_analytic(const DecoherenceSpec& spec, const ExpansionKinematics& kin) {
    validate(spec);
    validate(kin);
    detail::require(!spec.general_rate, "solve_cet_analytic: general rate laws have no closed form");
    const double cubic = 16.0 / 3.0 * kin.v_m * kin.v_m * spec.quadratic_lambda;
    const double linear = 16.0 * kin.x0 * kin.x0 * spec.quadratic_lambda + 4.0 * spec.constant_rate;
    if (cubic == 0.0 && linear == 0.0) {
        return std::nullopt;
    }
    if (cubic == 0.0) {
        return 1.0 / linear;
    }
    // Depressed cubic t^3 + p t - q = 0 with p, q > 0 has one real root
    // t = a - b, a^3 - b^3 = q, a b = p/3, evaluated as q / (a^2 + ab + b^2).
    const double p = linear / cubic;
    const double q = 1.0 / cubic;
    const double disc = std::sqrt(0.25 * q * q + p * p * p / 27.0);
    if (!std::isfinite(disc)) {
        return q / p;
    }
    const double a = std::cbrt(0.5 * q + disc);
    const double b = p / (3.0 * a);
    return q / (a * a + a * b + b * b);
}

/// Coherent expansion distance; std::nullopt means infinite.
inline std::optional<double> ced(const DecoherenceSpec& spec, const ExpansionKinematics& kin) {
    const auto cet = solve_cet(spec, kin);
    if (!cet) {
        return std::nullopt;
    }
    return kin.v_m * *cet;
}

struct VisibilityFactors {
    double amplitude = 1.0;  // exp(-2 Gamma), off-diagonal suppression
    double visibility = 1.0; // exp(-4 Gamma)
};

inline VisibilityFactors visibility_factor(double gamma_value) {
    detail::require(gamma_value >= 0.0, "visibility_factor: gamma must be >= 0");
    return {std::exp(-2.0 * gamma_value), std::exp(-4.0 * gamma_value)};
}

} // namespace macroq
