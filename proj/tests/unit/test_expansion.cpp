#include <cmath>

#include <gtest/gtest.h>

#include "macroq/expansion.hpp"
#include "macroq/testability.hpp"

using namespace macroq;

namespace {

void expect_rel(double actual, double expected, double rel) {
    EXPECT_NEAR(actual, expected, rel * std::abs(expected)) << "expected " << expected;
}

ExpansionKinematics baseline_kinematics() {
    const auto s = scenario_presets().at("fig2_baseline");
    return kinematics_for(s.particle, s.trap);
}

} // namespace

TEST(Sigma, StartsAtGroundStateWidth) { EXPECT_EQ(sigma(0.0, {3.5e-12, 2.2e-6}), 3.5e-12); }

TEST(Sigma, ThreeFourFive) { EXPECT_DOUBLE_EQ(sigma(1.0, {3.0, 4.0}), 5.0); }

TEST(Sigma, LinearAsymptote) {
    const ExpansionKinematics kin{3.5e-12, 2.2e-6};
    const double t = 100.0 * kin.x0 / kin.v_m;
    EXPECT_LT(std::abs(sigma(t, kin) / (kin.v_m * t) - 1.0), 1e-4);
    EXPECT_LT(std::abs(sigma(10.0 * t, kin) / (kin.v_m * 10.0 * t) - 1.0), 1e-4);
}

TEST(Gamma, ZeroAtZero) {
    const DecoherenceSpec spec{1.0, 1.0, std::nullopt};
    EXPECT_EQ(gamma(0.0, spec, {1.0, 1.0}), 0.0);
}

TEST(Gamma, ConstantRateIsLinear) {
    const DecoherenceSpec spec{0.0, 2.5, std::nullopt};
    EXPECT_DOUBLE_EQ(gamma(3.0, spec, {1.0, 1.0}), 7.5);
}

TEST(Gamma, QuadraticUnitCase) {
    const DecoherenceSpec spec{1.0, 0.0, std::nullopt};
    EXPECT_DOUBLE_EQ(gamma(1.0, spec, {1.0, 1.0}), 16.0 / 3.0);
}

TEST(Gamma, GeneralRateMatchesClosedFormForQuadraticLaw) {
    const auto kin = baseline_kinematics();
    const double lambda = 3.47593281173e15;
    DecoherenceSpec general;
    general.general_rate = GeneralRate{[lambda](double dx) { return lambda * dx * dx; }, {}};
    const DecoherenceSpec closed{lambda, 0.0, std::nullopt};
    for (double tau : {1e-9, 1e-6, 1e-3, 0.0221793505125815, 1.0}) {
        expect_rel(gamma(tau, general, kin), gamma(tau, closed, kin), 1e-9);
    }
}

TEST(Gamma, ShortIntervalsConvergeQuickly) {
    const auto kin = baseline_kinematics();
    int calls = 0;
    DecoherenceSpec spec;
    spec.general_rate = GeneralRate{[&calls](double dx) {
                                        ++calls;
                                        return dx * dx;
                                    },
                                    {}};
    gamma(1e-12, spec, kin);
    EXPECT_LT(calls, 200);
}

TEST(Gamma, RejectsNegativeTime) {
    EXPECT_THROW(gamma(-1.0, DecoherenceSpec{1.0, 0.0, std::nullopt}, {1.0, 1.0}), InputError);
}

TEST(SolveCet, ConstantRateOnly) {
    const DecoherenceSpec spec{0.0, 0.0335234550048, std::nullopt};
    expect_rel(*solve_cet(spec, baseline_kinematics()), 1.0 / (4.0 * 0.0335234550048), 1e-12);
    expect_rel(*solve_cet_analytic(spec, baseline_kinematics()), 1.0 / (4.0 * 0.0335234550048), 1e-15);
}

TEST(SolveCet, CubicDominantRegime) {
    const ExpansionKinematics kin{1e-20, 2.2e-6};
    const double lambda = 3.5e15;
    const DecoherenceSpec spec{lambda, 0.0, std::nullopt};
    const double expected = std::cbrt(3.0 / (16.0 * kin.v_m * kin.v_m * lambda));
    expect_rel(*solve_cet(spec, kin), expected, 1e-12);
    expect_rel(*solve_cet_analytic(spec, kin), expected, 1e-12);
}

TEST(SolveCet, BaselineQuantumValue) {
    const auto s = scenario_presets().at("fig2_baseline");
    const auto kin = kinematics_for(s.particle, s.trap);
    const auto spec = qm_spec(s);
    const double cet = *solve_cet(spec, kin);
    expect_rel(cet, 0.0221793505125815, 1e-10);
    EXPECT_LE(std::abs(4.0 * gamma(cet, spec, kin) - 1.0), 1e-9);
    expect_rel(*solve_cet_analytic(spec, kin), cet, 1e-8);
}

TEST(SolveCet, ZeroDecoherenceIsInfinite) {
    EXPECT_FALSE(solve_cet(DecoherenceSpec{}, baseline_kinematics()).has_value());
    EXPECT_FALSE(solve_cet_analytic(DecoherenceSpec{}, baseline_kinematics()).has_value());
    EXPECT_FALSE(ced(DecoherenceSpec{}, baseline_kinematics()).has_value());
}

TEST(SolveCet, BelowUpperCapIsInfinite) {
    const DecoherenceSpec spec{0.0, 1e-12, std::nullopt};
    EXPECT_FALSE(solve_cet(spec, baseline_kinematics()).has_value());
}

TEST(SolveCet, VeryStrongDecoherenceBelowInitialBracket) {
    const DecoherenceSpec spec{0.0, 1e15, std::nullopt};
    expect_rel(*solve_cet(spec, baseline_kinematics()), 0.25e-15, 1e-12);
}

TEST(SolveCet, SaturatingLawUsesIntegral) {
    const auto p = scenario_presets().at("fig2_baseline").particle;
    const auto kin = baseline_kinematics();
    DecoherenceSpec spec;
    spec.general_rate = GeneralRate{model_rate_fn(ModelId::DP, p), {p.radius}};
    const double cet = *solve_cet(spec, kin);
    EXPECT_LE(std::abs(4.0 * gamma(cet, spec, kin) - 1.0), 1e-9);
    // Saturated almost from the start: the rate is close to lambda r^2.
    expect_rel(cet, 1.0 / (4.0 * dp_rate(p, p.radius)), 0.01);
}

TEST(Ced, DefinitionAndBaseline) {
    const auto s = scenario_presets().at("fig2_baseline");
    const auto kin = kinematics_for(s.particle, s.trap);
    const auto spec = qm_spec(s);
    EXPECT_DOUBLE_EQ(*ced(spec, kin), kin.v_m * *solve_cet(spec, kin));
    expect_rel(*ced(spec, kin), 4.92429147019e-8, 1e-9);
    EXPECT_LT(*ced(spec, kin), 175e-9);
}

TEST(Ced, DoublingLambdaInCubicRegime) {
    const ExpansionKinematics kin{1e-20, 2.2e-6};
    const double a = *ced(DecoherenceSpec{1e15, 0.0, std::nullopt}, kin);
    const double b = *ced(DecoherenceSpec{2e15, 0.0, std::nullopt}, kin);
    expect_rel(a / b, std::cbrt(2.0), 1e-10);
}

TEST(Visibility, Values) {
    const auto zero = visibility_factor(0.0);
    EXPECT_EQ(zero.amplitude, 1.0);
    EXPECT_EQ(zero.visibility, 1.0);
    EXPECT_DOUBLE_EQ(visibility_factor(0.25).visibility, std::exp(-1.0));
    EXPECT_DOUBLE_EQ(visibility_factor(std::log(2.0) / 4.0).visibility, 0.5);
}

TEST(Visibility, AtCetIsOneOverE) {
    const auto s = scenario_presets().at("fig2_baseline");
    const auto kin = kinematics_for(s.particle, s.trap);
    const auto spec = qm_spec(s);
    expect_rel(visibility_factor(gamma(*solve_cet(spec, kin), spec, kin)).visibility, std::exp(-1.0), 1e-9);
}
