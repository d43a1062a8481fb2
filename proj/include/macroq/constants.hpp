#pragma once

#include <cmath>
#include <numbers>

namespace macroq {

/// CODATA 2018 values in SI units.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;        // J s
    double c = 299792458.0;               // m/s
    double k_B = 1.380649e-23;            // J/K
    double G = 6.67430e-11;               // m^3/(kg s^2)
    double m_u = 1.66053906660e-27;       // kg
    double m_nucleon = 1.67262192369e-27; // kg (proton)
    double m_Planck = 2.176434e-8;        // kg
    double planck_length = 1.616255e-35;  // m
    double gas_constant_R = 8.314462618;  // J/(K mol)
    double stefan_boltzmann = 5.670374419e-8;
    double zeta9 = 1.0020083928260822;    // Riemann zeta(9)
};

inline constexpr PhysicalConstants constants{};

inline constexpr double pi = std::numbers::pi;
inline constexpr double standard_gravity = 9.81; // m/s^2
inline constexpr double pascal_per_mbar = 100.0;
inline constexpr double seconds_per_hour = 3600.0;
inline constexpr double seconds_per_day = 86400.0;

} // namespace macroq
