#include <cmath>

#include <gtest/gtest.h>

#include "macroq/vacuum.hpp"

using namespace macroq;

namespace {

void expect_rel(double actual, double expected, double rel) {
    EXPECT_NEAR(actual, expected, rel * std::abs(expected)) << "expected " << expected;
}

constexpr double species_mass = 30.0 * constants.m_u;
constexpr double hour = seconds_per_hour;

MaterialOutgassing single_species() { return {"CFRP", 10.0, {{0.207, 2000.0 * hour, species_mass}}, 1.0}; }

} // namespace

TEST(OutgassingRate, InitialValue) {
    const auto m = single_species();
    expect_rel(outgassing_rate(m, 0.0), 10.0 * 0.207 / 100.0 / (2000.0 * hour), 1e-15);
}

TEST(OutgassingRate, DecaysToZero) {
    const auto m = single_species();
    EXPECT_LT(outgassing_rate(m, 1e3 * 2000.0 * hour), 1e-300);
    EXPECT_LT(outgassing_rate(m, 3600.0), outgassing_rate(m, 0.0));
}

TEST(OutgassingRate, IntegralIsTotalMassLoss) {
    MaterialOutgassing m{"mix", 4.0, {{0.3, 100.0, species_mass}, {0.05, 5000.0, species_mass}}, 1.0};
    // Trapezoid rule on a log-spaced grid.
    double total = 0.0;
    double t_prev = 0.0;
    double f_prev = outgassing_rate(m, 0.0);
    for (int i = 0; i <= 20000; ++i) {
        const double t = 1e-2 * std::pow(10.0, i * 7.0 / 20000.0);
        const double f = outgassing_rate(m, t);
        total += 0.5 * (f + f_prev) * (t - t_prev);
        t_prev = t;
        f_prev = f;
    }
    expect_rel(total, 4.0 * 0.35 / 100.0, 1e-6);
}

TEST(EmissionRate, ZeroOutgassingIsZero) { EXPECT_EQ(emission_rate(0.0, species_mass, 1.0), 0.0); }

TEST(EmissionRate, ImpliedCfrpArea) {
    const double area = 5e-9 / (species_mass * 4.8e15);
    expect_rel(area, 20.91, 1e-3);
    expect_rel(emission_rate(5e-9, species_mass, area), 4.8e15, 1e-14);
}

TEST(EmissionRate, InverseInSpeciesMass) {
    expect_rel(emission_rate(5e-9, species_mass, 1.0) / emission_rate(5e-9, 2.0 * species_mass, 1.0), 2.0, 1e-15);
}

TEST(SteadyState, Cfrp) {
    const auto g = steady_state(4.8e15, 300.0, species_mass);
    expect_rel(g.number_density, 1.66465e13, 1e-5);
    expect_rel(g.pressure / pascal_per_mbar, 6.8949e-10, 1e-4);
    expect_rel(g.number_density, 17e12, 0.1);
    expect_rel(g.pressure / pascal_per_mbar, 7.1e-10, 0.1);
}

TEST(SteadyState, Kapton) {
    const auto g = steady_state(9e14, 300.0, species_mass);
    expect_rel(g.number_density, 3.12123e12, 1e-5);
    expect_rel(g.pressure / pascal_per_mbar, 1.29280e-10, 1e-4);
    expect_rel(g.number_density, 3e12, 0.1);
    expect_rel(g.pressure / pascal_per_mbar, 1.3e-10, 0.1);
}

TEST(SteadyState, NoEmissionIsVacuum) {
    const auto g = steady_state(0.0, 300.0, species_mass);
    EXPECT_EQ(g.number_density, 0.0);
    EXPECT_EQ(g.pressure, 0.0);
}

TEST(CollisionRate, TableRows) {
    expect_rel(collision_rate(4.8e15, 200e-9), 603.186, 1e-5);
    expect_rel(collision_rate(9e14, 200e-9), 113.097, 1e-5);
    expect_rel(collision_rate(3.1e16, 200e-9), 3895.575, 1e-6);
    EXPECT_EQ(collision_rate(4.8e15, 0.0), 0.0);
}

TEST(Dilution, SphereSurfaceAndInverseSquare) {
    EXPECT_DOUBLE_EQ(dilution_sphere(5.0, 0.1, 0.1), 5.0);
    expect_rel(dilution_sphere(5.0, 0.1, 0.4) / dilution_sphere(5.0, 0.1, 0.2), 0.25, 1e-15);
    EXPECT_THROW(dilution_sphere(5.0, 0.1, 0.05), InputError);
}

TEST(Dilution, MillimetrePatchAtTenCentimetres) {
    const double area = pi * 0.5e-3 * 0.5e-3;
    const double factor = dilution(PatchSource{area}, 1.0, 0.1);
    expect_rel(factor, 3.92699e-5, 1e-5);
    EXPECT_LT(factor / 3e-5, 1.5);
    EXPECT_GT(factor / 3e-5, 1.0 / 1.5);
    expect_rel(dilution(PatchSource{area}, 1.0, 0.2) / factor, 0.25, 1e-15);
}

TEST(Arrhenius, HighTemperatureLimit) { expect_rel(arrhenius_residence(7.0, 5e4, 1e12), 7.0, 1e-7); }

TEST(Arrhenius, LnTwoDoublesResidence) {
    const double t = 300.0;
    const double e1 = 2e4;
    const double e2 = e1 + std::log(2.0) * constants.gas_constant_R * t;
    expect_rel(arrhenius_residence(1.0, e2, t) / arrhenius_residence(1.0, e1, t), 2.0, 1e-12);
}

TEST(Arrhenius, ActivationFromAccelerationFactor) {
    const double e10 = activation_energy_from_acceleration(10.0, 300.0, 275.0);
    const double e3 = activation_energy_from_acceleration(3.0, 300.0, 275.0);
    expect_rel(e10, 25.33, 1e-3);
    expect_rel(e3, 12.08, 1e-3);
    const double j_per_mol = e10 * constants.gas_constant_R * room_temperature;
    expect_rel(arrhenius_residence(1.0, j_per_mol, 275.0) / arrhenius_residence(1.0, j_per_mol, 300.0), 10.0, 1e-12);
}

TEST(PressureAttenuation, ZeroActivationIsSqrtRatio) {
    expect_rel(pressure_attenuation(0.0, 300.0, 30.0), std::sqrt(10.0), 1e-15);
}

TEST(PressureAttenuation, ActivationBand) {
    expect_rel(pressure_attenuation(10.0, 300.0, 30.0), 3.85925e39, 1e-5);
    EXPECT_LT(pressure_attenuation(10.0, 300.0, 30.0), 1e40);
    expect_rel(pressure_attenuation(30.0, 300.0, 30.0), 5.74791e117, 1e-5);
}

TEST(BakeOutPower, QuotedValues) {
    expect_rel(bake_out_power(0.23, 300.0), 105.639, 1e-5);
    expect_rel(bake_out_power(0.23, 400.0), 333.872, 1e-5);
    expect_rel(bake_out_power(0.23, 300.0), 105.0, 0.02);
    expect_rel(bake_out_power(0.23, 400.0), 330.0, 0.02);
    EXPECT_EQ(bake_out_power(0.23, 0.0), 0.0);
}

TEST(Tables, SummaryRowsReproduceCollisionRates) {
    for (const auto& row : outgassing_summary_table()) {
        expect_rel(collision_rate(row.gamma, 200e-9), row.collision_rate, 0.01);
        const auto g = steady_state(row.gamma, 300.0, row.species_mass_u * constants.m_u);
        expect_rel(g.pressure / pascal_per_mbar, row.pressure_mbar, 0.1);
        expect_rel(g.number_density, row.density, 0.1);
    }
}

TEST(Tables, DominantSpecies) {
    const auto rows = dominant_species_table();
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1].material, "CFRP");
    EXPECT_EQ(rows[1].tml_percent, 0.207);
    EXPECT_EQ(rows[1].residence_time_h, 2000.0);
}
