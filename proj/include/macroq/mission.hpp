#pragma once

#include <cmath>
#include <algorithm>
#include <string>
#include <vector>

#include "macroq/constants.hpp"
#include "macroq/errors.hpp"

// Two-body orbit geometry and the small engineering budgets that go with the
// mission: perigee gravity and dwell time, sensor integration, thruster
// noise, laser phase-noise threshold and mass/power ledgers.

namespace macroq {

struct OrbitElements {
    double apogee_altitude = 0.0;  // m
    double perigee_altitude = 0.0; // m
    double body_radius = 6.371e6;  // m
    double body_mu = 3.986004418e14; // m^3/s^2
    double inclination_deg = 0.0;  // informational

    double perigee_radius() const { return body_radius + perigee_altitude; }
    double apogee_radius() const { return body_radius + apogee_altitude; }
    double semi_major_axis() const { return body_radius + 0.5 * (apogee_altitude + perigee_altitude); }
    double eccentricity() const {
        return (apogee_radius() - perigee_radius()) / (apogee_radius() + perigee_radius());
    }
};

inline void validate(const OrbitElements& o) {
    detail::require(o.perigee_altitude >= 0.0 && o.apogee_altitude >= o.perigee_altitude,
                    "orbit: need apogee >= perigee >= 0");
    detail::require(o.body_radius > 0.0 && o.body_mu > 0.0, "orbit: body radius and mu must be > 0");
}

/// Highly eccentric orbit, 650000 km x 3800 km altitude, 63 deg.
inline OrbitElements maqro_heo() {
    OrbitElements o;
    o.apogee_altitude = 650000e3;
    o.perigee_altitude = 3800e3;
    o.inclination_deg = 63.0;
    return o;
}

inline double orbital_period(const OrbitElements& orbit) {
    validate(orbit);
    const double a = orbit.semi_major_axis();
    return 2.0 * pi * std::sqrt(a * a * a / orbit.body_mu);
}

struct LocalGravity {
    double acceleration = 0.0;  // m/s^2
    double fraction_of_g = 0.0; // relative to 9.81 m/s^2
};

inline LocalGravity local_gravity(const OrbitElements& orbit, double altitude) {
    validate(orbit);
    detail::require(altitude >= 0.0, "local_gravity: altitude must be >= 0");
    const double r = orbit.body_radius + altitude;
    const double g = orbit.body_mu / (r * r);
    return {g, g / standard_gravity};
}

namespace detail {

/// Time from perigee passage to radius r on the outbound leg (Kepler's equation).
inline double time_since_perigee(const OrbitElements& orbit, double radius) {
    const double a = orbit.semi_major_axis();
    const double e = orbit.eccentricity();
    const double cos_e = std::clamp((1.0 - radius / a) / e, -1.0, 1.0);
    const double ecc_anomaly = std::acos(cos_e);
    const double mean_anomaly = ecc_anomaly - e * std::sin(ecc_anomaly);
    return mean_anomaly / (2.0 * pi) * orbital_period(orbit);
}

} // namespace detail

/// Time per orbit spent with altitude in [h_lo, h_hi].
inline double altitude_window(const OrbitElements& orbit, double h_lo, double h_hi) {
    validate(orbit);
    detail::require(h_lo <= h_hi, "altitude_window: need h_lo <= h_hi");
    detail::require(h_lo >= orbit.perigee_altitude && h_hi <= orbit.apogee_altitude,
                    "altitude_window: band lies outside the orbit");
    if (orbit.eccentricity() == 0.0) {
        return orbital_period(orbit);
    }
    const double t_hi = detail::time_since_perigee(orbit, orbit.body_radius + h_hi);
    const double t_lo = detail::time_since_perigee(orbit, orbit.body_radius + h_lo);
    return 2.0 * (t_hi - t_lo);
}

struct IntegratedAccuracy {
    double absolute = 0.0;   // same unit as psd * sqrt(Hz)
    double fractional = 0.0; // absolute / reference
};

/// White-noise sensitivity integrated over T_int: psd / sqrt(T_int).
inline IntegratedAccuracy integrated_accuracy(double psd, double integration_time, double reference_accel) {
    detail::require(psd > 0.0 && integration_time > 0.0 && reference_accel > 0.0,
                    "integrated_accuracy: inputs must be > 0");
    const double absolute = psd / std::sqrt(integration_time);
    return {absolute, absolute / reference_accel};
}

inline double acceleration_noise_from_force(double force_psd, double spacecraft_mass) {
    detail::require(force_psd > 0.0 && spacecraft_mass > 0.0,
                    "acceleration_noise_from_force: inputs must be > 0");
    return force_psd / spacecraft_mass;
}

/// Position spread sqrt(S_a t^3 / 3) of a free mass driven by white
/// acceleration noise of amplitude spectral density accel_psd.
inline double thruster_position_noise(double accel_psd, double t) {
    detail::require(accel_psd > 0.0 && t > 0.0, "thruster_position_noise: inputs must be > 0");
    return std::sqrt(accel_psd * accel_psd * t * t * t / 3.0);
}

/// Maximum laser phase-noise spectral density compatible with ground-state
/// cooling: g0^2 / Gamma_m with Gamma_m = k_B T / (hbar Q).
inline double cooling_noise_threshold(double g0, double q_factor, double temperature) {
    detail::require(g0 > 0.0 && q_factor > 0.0 && temperature > 0.0, "cooling_noise_threshold: inputs must be > 0");
    const double thermalization = constants.k_B * temperature / (constants.hbar * q_factor);
    return g0 * g0 / thermalization;
}

struct LedgerItem {
    std::string name;
    double value = 0.0;
};

struct BudgetLedger {
    std::string name;
    std::string unit;
    std::vector<LedgerItem> items;
    double declared_total = 0.0;
};

struct BudgetCheck {
    double computed_total = 0.0;
    double declared_total = 0.0;
    double delta = 0.0; // computed - declared

    /// Printed totals are rounded to whole units.
    bool consistent(double tolerance = 0.5) const { return std::abs(delta) <= tolerance; }
};

inline BudgetCheck budget_check(const BudgetLedger& ledger) {
    detail::require(!ledger.items.empty(), "budget_check: ledger '" + ledger.name + "' is empty");
    double sum = 0.0;
    for (const auto& item : ledger.items) {
        sum += item.value;
    }
    return {sum, ledger.declared_total, sum - ledger.declared_total};
}

/// Launch-composite mass (kg) and payload power (W) ledgers.
inline std::vector<BudgetLedger> mission_ledgers() {
    return {
        {"lpf_dry_mass", "kg", {{"Payload (LTP)", 144}, {"Science Spacecraft", 274}, {"Propulsion Module", 210}}, 628},
        {"lpf_wet_mass", "kg", {{"Launch composite dry total", 628}, {"Consumables", 1110}}, 1738},
        {"maqro_dry_mass", "kg", {{"Payload", 97}, {"Science Spacecraft", 237}, {"Propulsion Module", 210}}, 544},
        {"maqro_dry_mass_with_options",
         "kg",
         {{"Payload", 97},
          {"Shield extension and bake-out (optional)", 7},
          {"Science Spacecraft", 237},
          {"Propulsion Module", 210}},
         551},
        {"maqro_wet_mass", "kg", {{"Launch composite dry total", 544}, {"Consumables", 1110}}, 1654},
        {"maqro_min_power_heater", "W", {{"Minimal power", 30}, {"Optional heater for shields", 105}}, 135},
    };
}

} // namespace macroq
