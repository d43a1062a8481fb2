#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "macroq/constants.hpp"
#include "macroq/errors.hpp"

namespace macroq {

struct OutgassingSpecies {
    double tml_percent = 0.0;    // total mass loss, %
    double residence_time = 0.0; // s
    double species_mass = 0.0;   // kg
};

struct MaterialOutgassing {
    std::string name;
    double total_mass = 0.0; // kg
    std::vector<OutgassingSpecies> species;
    double emitting_area = 0.0; // m^2
};

inline void validate(const MaterialOutgassing& m) {
    detail::require(m.total_mass >= 0.0, "outgassing: total mass must be >= 0");
    for (const auto& s : m.species) {
        detail::require(s.tml_percent >= 0.0 && s.tml_percent <= 100.0, "outgassing: TML must be in [0, 100] %");
        detail::require(s.residence_time > 0.0, "outgassing: residence time must be > 0");
    }
}

/// D_out(t) = m_tot sum_i (TML_i/100) e^{-t/tau_i} / tau_i, in kg/s.
inline double outgassing_rate(const MaterialOutgassing& material, double t) {
    validate(material);
    detail::require(t >= 0.0, "outgassing_rate: t must be >= 0");
    double sum = 0.0;
    for (const auto& s : material.species) {
        sum += s.tml_percent / 100.0 * std::exp(-t / s.residence_time) / s.residence_time;
    }
    return material.total_mass * sum;
}

/// gamma_0 = D_out / (m_i A_out), particles per m^2 per s.
inline double emission_rate(double outgassing_kg_per_s, double species_mass, double area) {
    detail::require(area > 0.0, "emission_rate: emitting area must be > 0");
    detail::require(species_mass > 0.0, "emission_rate: species mass must be > 0");
    return outgassing_kg_per_s / (species_mass * area);
}

/// Emission rate of a material's dominant (first) species at time t.
inline double emission_rate(const MaterialOutgassing& material, double t) {
    detail::require(!material.species.empty(), "emission_rate: material has no species");
    return emission_rate(outgassing_rate(material, t), material.species.front().species_mass, material.emitting_area);
}

struct GasState {
    double emission_rate_gamma0 = 0.0; // 1/(m^2 s)
    double number_density = 0.0;       // 1/m^3
    double pressure = 0.0;             // Pa
    double temperature = 0.0;          // K
};

/// One-dimensional thermal velocity sqrt(k_B T / m).
inline double thermal_velocity_1d(double temperature, double species_mass) {
    return std::sqrt(constants.k_B * temperature / species_mass);
}

/// Steady state above an infinite emitting plane: n = gamma_0 / v,
/// P = n k_B T with v = sqrt(k_B T / m_i).
inline GasState steady_state(double gamma0, double temperature, double species_mass) {
    detail::require(gamma0 >= 0.0, "steady_state: gamma0 must be >= 0");
    detail::require(temperature > 0.0 && species_mass > 0.0, "steady_state: T and species mass must be > 0");
    const double n = gamma0 / thermal_velocity_1d(temperature, species_mass);
    return {gamma0, n, n * constants.k_B * temperature, temperature};
}

/// Gamma_coll = gamma_0 pi R_s^2.
inline double collision_rate(double gamma0, double sphere_radius) {
    detail::require(gamma0 >= 0.0 && sphere_radius >= 0.0, "collision_rate: inputs must be >= 0");
    return gamma0 * pi * sphere_radius * sphere_radius;
}

/// Density at distance x from an emitting sphere of radius R_s: n0 R_s^2 / x^2.
inline double dilution_sphere(double n0, double sphere_radius, double distance) {
    detail::require(sphere_radius > 0.0, "dilution_sphere: radius must be > 0");
    detail::require(distance >= sphere_radius, "dilution_sphere: distance lies inside the source");
    return n0 * sphere_radius * sphere_radius / (distance * distance);
}

/// Density at distance x from a small emitting patch of area A: n0 A / (2 x^2).
inline double dilution_patch(double n0, double area, double distance) {
    detail::require(area > 0.0, "dilution_patch: area must be > 0");
    detail::require(distance * distance > area, "dilution_patch: distance lies inside the source");
    return n0 * area / (2.0 * distance * distance);
}

struct SphereSource {
    double radius = 0.0; // m
};

struct PatchSource {
    double area = 0.0; // m^2
};

using DilutionSource = std::variant<SphereSource, PatchSource>;

inline double dilution(const DilutionSource& source, double n0, double distance) {
    if (const auto* sphere = std::get_if<SphereSource>(&source)) {
        return dilution_sphere(n0, sphere->radius, distance);
    }
    return dilution_patch(n0, std::get<PatchSource>(source).area, distance);
}

/// Arrhenius residence time tau0 exp(E_A / (R T)), E_A in J/mol.
inline double arrhenius_residence(double tau0, double activation_j_per_mol, double temperature) {
    detail::require(tau0 > 0.0 && activation_j_per_mol >= 0.0 && temperature > 0.0,
                    "arrhenius_residence: inputs must be positive");
    return tau0 * std::exp(activation_j_per_mol / (constants.gas_constant_R * temperature));
}

/// Energy scale of room temperature, k_B * 300 K.
inline constexpr double room_temperature = 300.0;

/// Per-particle activation energy, in units of k_B * 300 K, that yields the
/// given residence-time acceleration factor for a step from t_cold to t_hot.
inline double activation_energy_from_acceleration(double factor, double t_hot, double t_cold) {
    detail::require(factor > 1.0 && t_hot > t_cold && t_cold > 0.0,
                    "activation_energy_from_acceleration: need factor > 1 and t_hot > t_cold > 0");
    return std::log(factor) / (1.0 / t_cold - 1.0 / t_hot) / room_temperature;
}

/// Ratio P(T_hot)/P(T_cold) for P ~ sqrt(T) exp(-E_A/(k_B T)), with E_A in
/// multiples of k_B * 300 K.
inline double pressure_attenuation(double activation_room_units, double t_hot, double t_cold) {
    detail::require(t_hot > t_cold && t_cold > 0.0, "pressure_attenuation: need t_hot > t_cold > 0");
    detail::require(activation_room_units >= 0.0, "pressure_attenuation: activation energy must be >= 0");
    const double e_over_k = activation_room_units * room_temperature;
    return std::sqrt(t_hot / t_cold) * std::exp(e_over_k * (1.0 / t_cold - 1.0 / t_hot));
}

/// Radiated power eps sigma_SB A T^4 that a heater must supply to hold the
/// surface at temperature T.
inline double bake_out_power(double area, double temperature, double emissivity = 1.0) {
    detail::require(area >= 0.0 && temperature >= 0.0, "bake_out_power: area and T must be >= 0");
    detail::require(emissivity > 0.0 && emissivity <= 1.0, "bake_out_power: emissivity must be in (0, 1]");
    const double t2 = temperature * temperature;
    return emissivity * constants.stefan_boltzmann * area * t2 * t2;
}

/// Row of the outgassing summary as printed (species mass in atomic mass
/// units, residence time in hours, pressure in mbar).
struct OutgassingTableRow {
    std::string material;
    double outgassing_kg_per_s = 0.0;
    double species_mass_u = 0.0;
    double residence_time_h = 0.0;
    double gamma = 0.0;
    double pressure_mbar = 0.0;
    double density = 0.0;
    double collision_rate = 0.0;
};

/// Dominant-species parameters at 300 K (TML %, residence time in hours).
struct DominantSpeciesRow {
    std::string material;
    double tml_percent = 0.0;
    double residence_time_h = 0.0;
};

inline std::vector<DominantSpeciesRow> dominant_species_table() {
    return {
        {"Adhesive (EC2216)", 0.558, 1.20e3},
        {"CFRP", 0.207, 2.00e3},
        {"Kapton", 0.0311, 1.00e4},
    };
}

/// Summary at 300 K for a 200 nm sphere, values as printed.
inline std::vector<OutgassingTableRow> outgassing_summary_table() {
    return {
        {"CFRP", 5e-9, 30, 2e3, 48e14, 7.1e-10, 17e12, 603},
        {"Kapton", 4e-12, 30, 10e3, 9e14, 1.3e-10, 3e12, 113},
        {"Adhesives", 9e-12, 30, 12e3, 310e14, 44e-10, 108e12, 3896},
    };
}

} // namespace macroq
