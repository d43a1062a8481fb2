#pragma once

#include <cmath>

#include "macroq/constants.hpp"
#include "macroq/errors.hpp"
#include "macroq/numerics.hpp"
#include "macroq/scenario.hpp"

// Standard-quantum decoherence of a dielectric nanosphere: residual gas
// collisions plus scattering, absorption and emission of thermal radiation.
// Gas scattering is separation independent (a constant rate); the three
// blackbody channels are quadratic in the separation with coefficient Lambda.

namespace macroq {

struct ChannelRates {
    double gas_rate = 0.0;          // 1/s
    double lambda_bb_scatter = 0.0; // 1/(m^2 s)
    double lambda_bb_absorb = 0.0;
    double lambda_bb_emit = 0.0;

    double total_lambda() const { return lambda_bb_scatter + lambda_bb_absorb + lambda_bb_emit; }
};

/// Root-mean-square thermal velocity sqrt(3 k_B T / m).
inline double gas_thermal_velocity(const Environment& env) {
    validate(env);
    return std::sqrt(3.0 * constants.k_B * env.temperature / env.gas_particle_mass);
}

inline double gas_collision_rate(const Particle& particle, const Environment& env) {
    validate(particle);
    validate(env);
    if (env.pressure == 0.0) {
        return 0.0;
    }
    detail::require(env.temperature > 0.0, "gas_collision_rate: pressure > 0 needs temperature > 0");
    const double v_a = gas_thermal_velocity(env);
    const double r = particle.radius;
    return 2.0 * std::sqrt(6.0 * pi) * r * r * env.pressure / (env.gas_particle_mass * v_a);
}

namespace detail {

/// Thermal wavenumber k_B T / (hbar c).
inline double thermal_wavenumber(double temperature) {
    return constants.k_B * temperature / (constants.c * constants.hbar);
}

inline double bb_linear_lambda(double radius, double temperature, double im_cm) {
    const double kt = thermal_wavenumber(temperature);
    const double kt3 = kt * kt * kt;
    return 16.0 * std::pow(pi, 5) * radius * radius * radius * constants.c / 189.0 * kt3 * kt3 * im_cm;
}

} // namespace detail

inline double bb_scatter_lambda(const Particle& particle, const Environment& env) {
    validate(particle);
    validate(env);
    const double re = clausius_mossotti(particle.permittivity_bb).real();
    const double r3 = particle.radius * particle.radius * particle.radius;
    const double fact8 = 40320.0;
    return 8.0 * fact8 * r3 * r3 * constants.c * constants.zeta9 / (9.0 * pi)
           * std::pow(detail::thermal_wavenumber(env.temperature), 9) * re * re;
}

/// Absorption of thermal photons from the environment at T_e.
inline double bb_absorb_lambda(const Particle& particle, const Environment& env) {
    validate(particle);
    validate(env);
    return detail::bb_linear_lambda(particle.radius, env.temperature,
                                    clausius_mossotti(particle.permittivity_bb).imag());
}

/// Emission of thermal photons by the particle at its internal temperature.
inline double bb_emit_lambda(const Particle& particle, double internal_temperature) {
    validate(particle);
    detail::require(internal_temperature >= 0.0, "bb_emit_lambda: T_i must be >= 0");
    return detail::bb_linear_lambda(particle.radius, internal_temperature,
                                    clausius_mossotti(particle.permittivity_bb).imag());
}

/// Spectral emission rate R(k) of a sphere at internal temperature T_i,
/// with the single-photon localization factor F(dr) and the quadratic
/// coefficient obtained from the small-separation expansion of F.
///
/// Integrals run over x = hbar c k / (k_B T_i) on (0, x_max], where x_max is
/// chosen so x^5/(e^x - 1) has dropped below 1e-12 of its peak.
class EmissionSpectrum {
public:
    static constexpr double x_max = 60.0;

    EmissionSpectrum(const Particle& particle, double internal_temperature)
        : particle_(particle), temperature_(internal_temperature) {
        validate(particle);
        detail::require(internal_temperature > 0.0, "EmissionSpectrum: T_i must be > 0");
        k_thermal_ = detail::thermal_wavenumber(temperature_);
        const double r = particle.radius;
        const double volume = 4.0 / 3.0 * pi * r * r * r;
        prefactor_ = 3.0 * volume * constants.c / pi * clausius_mossotti(particle.permittivity_bb).imag();
        total_rate_ = integrate_moment(0);
    }

    double internal_temperature() const { return temperature_; }
    double thermal_wavenumber() const { return k_thermal_; }

    /// R(k) in photons per second per unit wavenumber.
    double rate_density(double k) const {
        if (k <= 0.0) {
            return 0.0;
        }
        const double x = k / k_thermal_;
        return prefactor_ * k * k * k / std::expm1(x);
    }

    /// R_tot = int R(k) dk.
    double total_rate() const { return total_rate_; }

    /// (1/6) int R(k) k^2 dk, the quadratic coefficient implied by the
    /// small-separation expansion of F.
    double lambda_from_integral() const { return integrate_moment(2) / 6.0; }

    /// F(dr) = (1/R_tot) int R(k) sinc(k dr) dk; F(0) = 1.
    double localization_factor(double separation) const {
        detail::require(separation >= 0.0, "localization_factor: separation must be >= 0");
        if (separation == 0.0 || total_rate_ == 0.0) {
            return 1.0;
        }
        const double s = separation * k_thermal_;
        auto integrand = [s](double x) {
            const double kx = x * s;
            const double sinc = kx < 1e-4 ? 1.0 - kx * kx / 6.0 : std::sin(kx) / kx;
            return planck_moment(x, 3) * sinc;
        };
        // Oscillation period in x is 2 pi / s; split so each panel sees a bounded number of cycles.
        std::vector<double> breaks;
        if (s > 0.5) {
            const double step = 2.0 * pi / s;
            for (double b = step; b < x_max && breaks.size() < 4000; b += step) {
                breaks.push_back(b);
            }
        }
        const auto num = numerics::integrate(integrand, 0.0, x_max, numerics::default_rel_tol, breaks);
        return num.value / total_moment_x3();
    }

private:
    static double planck_moment(double x, int power) {
        if (x <= 0.0) {
            return 0.0;
        }
        return std::pow(x, power) / std::expm1(x);
    }

    double total_moment_x3() const {
        static const double value =
            numerics::integrate([](double x) { return planck_moment(x, 3); }, 0.0, x_max).value;
        return value;
    }

    /// int R(k) k^n dk via the dimensionless Planck integral.
    double integrate_moment(int n) const {
        const auto num = numerics::integrate([n](double x) { return planck_moment(x, 3 + n); }, 0.0, x_max);
        return prefactor_ * std::pow(k_thermal_, 4 + n) * num.value;
    }

    Particle particle_;
    double temperature_;
    double k_thermal_ = 0.0;
    double prefactor_ = 0.0;
    double total_rate_ = 0.0;
};

inline ChannelRates qm_channel_rates(const Scenario& scenario) {
    validate(scenario);
    ChannelRates rates;
    rates.gas_rate = gas_collision_rate(scenario.particle, scenario.environment);
    rates.lambda_bb_scatter = bb_scatter_lambda(scenario.particle, scenario.environment);
    rates.lambda_bb_absorb = bb_absorb_lambda(scenario.particle, scenario.environment);
    rates.lambda_bb_emit = bb_emit_lambda(scenario.particle, scenario.trap.internal_temperature);
    return rates;
}

} // namespace macroq
