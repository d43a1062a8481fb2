#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "macroq/constants.hpp"
#include "macroq/errors.hpp"

namespace macroq {

struct ComplexPermittivity {
    double real_part = 1.0;
    double imag_part = 0.0;

    std::complex<double> value() const { return {real_part, imag_part}; }
};

struct Particle {
    double radius = 0.0;  // m
    double density = 0.0; // kg/m^3
    ComplexPermittivity permittivity_trap;
    ComplexPermittivity permittivity_bb; // constant over the blackbody band
};

struct Environment {
    double temperature = 0.0;       // K (T_e)
    double pressure = 0.0;          // Pa
    double gas_particle_mass = 0.0; // kg (m_a)
};

struct Trap {
    double wavelength = 1.064e-6;
    double power = 0.1;
    double waist = 10e-6;
    double angular_frequency = 2.0 * pi * 1e5; // rad/s
    double internal_temperature = 98.0;        // K (T_i)
};

struct Scenario {
    Particle particle;
    Environment environment;
    Trap trap;
    std::string label;
};

inline void validate(const Particle& p) {
    detail::require(std::isfinite(p.radius) && p.radius >= 0.0, "particle radius must be >= 0");
    detail::require(std::isfinite(p.density) && p.density > 0.0, "particle density must be > 0");
    detail::require(p.permittivity_bb.imag_part >= 0.0 && p.permittivity_trap.imag_part >= 0.0,
                    "permittivity imaginary part must be >= 0");
}

inline void validate(const Environment& e) {
    detail::require(std::isfinite(e.temperature) && e.temperature >= 0.0,
                    "environment temperature must be >= 0");
    detail::require(std::isfinite(e.pressure) && e.pressure >= 0.0, "pressure must be >= 0");
    detail::require(e.gas_particle_mass > 0.0, "gas particle mass must be > 0");
}

inline void validate(const Trap& t) {
    detail::require(t.wavelength > 0.0 && t.power > 0.0 && t.waist > 0.0,
                    "trap wavelength, power and waist must be > 0");
    detail::require(t.angular_frequency > 0.0, "trap angular frequency must be > 0");
    detail::require(t.internal_temperature >= 0.0, "internal temperature must be >= 0");
}

inline void validate(const Scenario& s) {
    validate(s.particle);
    validate(s.environment);
    validate(s.trap);
}

inline double particle_mass(const Particle& p) {
    validate(p);
    return 4.0 / 3.0 * pi * p.radius * p.radius * p.radius * p.density;
}

/// Harmonic-oscillator ground-state width sqrt(hbar / (2 m omega)).
inline double ground_state_width(double mass, double omega) {
    detail::require(mass > 0.0 && omega > 0.0, "ground_state_width: mass and omega must be > 0");
    return std::sqrt(constants.hbar / (2.0 * mass * omega));
}

/// Free-spreading velocity of a minimum-uncertainty packet of width x0.
inline double expansion_velocity(double mass, double x0) {
    detail::require(mass > 0.0 && x0 > 0.0, "expansion_velocity: mass and x0 must be > 0");
    return constants.hbar / (2.0 * mass * x0);
}

/// (eps - 1) / (eps + 2)
inline std::complex<double> clausius_mossotti(const ComplexPermittivity& eps) {
    const auto e = eps.value();
    const auto denom = e + 2.0;
    if (std::abs(denom) == 0.0) {
        throw InputError("clausius_mossotti: permittivity -2 is nonphysical");
    }
    return (e - 1.0) / denom;
}

} // namespace macroq
