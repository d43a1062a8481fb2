#include <cmath>

#include <gtest/gtest.h>

#include "macroq/testability.hpp"

using namespace macroq;

namespace {

Scenario baseline() { return scenario_presets().at("fig2_baseline"); }

Scenario zero_decoherence() {
    auto s = baseline();
    s.environment.pressure = 0.0;
    s.environment.temperature = 0.0;
    s.trap.internal_temperature = 0.0;
    return s;
}

SweepRow row_with(double radius, bool violated) {
    SweepRow row;
    row.radius = radius;
    row.models.push_back({"m", 1.0, violated});
    return row;
}

} // namespace

TEST(IsViolated, Ordering) {
    EXPECT_TRUE(is_violated(1.0, 2.0));
    EXPECT_FALSE(is_violated(2.0, 1.0));
    EXPECT_FALSE(is_violated(1.0, 1.0));
    EXPECT_TRUE(is_violated(1.0, std::nullopt));
    EXPECT_FALSE(is_violated(std::nullopt, 1.0));
    EXPECT_FALSE(is_violated(std::nullopt, std::nullopt));
}

TEST(RadiusGridTest, EndpointsAndSpacing) {
    SweepConfig cfg;
    cfg.scenario = baseline();
    cfg.points = 5;
    const auto log = radius_grid(cfg);
    ASSERT_EQ(log.size(), 5u);
    EXPECT_EQ(log.front(), 10e-9);
    EXPECT_EQ(log.back(), 500e-9);
    EXPECT_NEAR(log[1] / log[0], log[3] / log[2], 1e-12);
    cfg.grid = RadiusGrid::Linear;
    const auto lin = radius_grid(cfg);
    EXPECT_NEAR(lin[1] - lin[0], lin[3] - lin[2], 1e-20);
}

TEST(RadiusGridTest, RejectsBadConfig) {
    SweepConfig cfg;
    cfg.scenario = baseline();
    cfg.points = 1;
    EXPECT_THROW(radius_grid(cfg), InputError);
    cfg.points = 4;
    cfg.radius_min = cfg.radius_max;
    EXPECT_THROW(radius_grid(cfg), InputError);
}

TEST(Sweep, ZeroDecoherenceRowsAreInfinite) {
    SweepConfig cfg;
    cfg.scenario = zero_decoherence();
    cfg.points = 2;
    const auto rows = sweep(cfg);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& row : rows) {
        EXPECT_TRUE(row.ok());
        EXPECT_FALSE(row.ced_qm.has_value());
    }
}

TEST(Sweep, BaselineCslViolatedAtNinetyNanometres) {
    const auto s = baseline();
    const auto rates = qm_channel_rates(s);
    const double lambda_csl = csl_lambda(s.particle, CslParams::standard());
    EXPECT_GT(lambda_csl, rates.total_lambda());
    const auto row = evaluate_row(s, default_models());
    ASSERT_TRUE(row.ok());
    EXPECT_TRUE(row.find("csl")->violated);
    EXPECT_NEAR(*row.find("csl")->ced, 2.47772961318e-8, 1e-17);
    EXPECT_LT(*row.ced_qm, 175e-9);
}

TEST(Sweep, RowsEqualDirectEvaluation) {
    SweepConfig cfg;
    cfg.scenario = baseline();
    cfg.points = 7;
    const auto rows = sweep(cfg);
    const auto radii = radius_grid(cfg);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto direct = evaluate_row(at_radius(cfg.scenario, radii[i]), cfg.models);
        EXPECT_EQ(rows[i].radius, direct.radius);
        EXPECT_EQ(rows[i].ced_qm, direct.ced_qm);
        ASSERT_EQ(rows[i].models.size(), direct.models.size());
        for (std::size_t j = 0; j < direct.models.size(); ++j) {
            EXPECT_EQ(rows[i].models[j].ced, direct.models[j].ced);
            EXPECT_EQ(rows[i].models[j].violated, direct.models[j].violated);
        }
    }
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    SweepConfig cfg;
    cfg.scenario = baseline();
    cfg.points = 12;
    cfg.threads = 1;
    const auto serial = sweep(cfg);
    cfg.threads = 4;
    const auto parallel = sweep(cfg);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].ced_qm, parallel[i].ced_qm);
        for (std::size_t j = 0; j < serial[i].models.size(); ++j) {
            EXPECT_EQ(serial[i].models[j].ced, parallel[i].models[j].ced);
        }
    }
}

TEST(Sweep, FastPathAgreesWithQuadrature) {
    SweepConfig cfg;
    cfg.scenario = baseline();
    cfg.points = 6;
    const auto fast = sweep(cfg);
    cfg.force_quadrature = true;
    const auto slow = sweep(cfg);
    for (std::size_t i = 0; i < fast.size(); ++i) {
        for (std::size_t j = 0; j < fast[i].models.size(); ++j) {
            const auto& a = fast[i].models[j].ced;
            const auto& b = slow[i].models[j].ced;
            ASSERT_EQ(a.has_value(), b.has_value());
            if (a) {
                EXPECT_NEAR(*a / *b, 1.0, 1e-8) << fast[i].models[j].name << " r=" << fast[i].radius;
            }
        }
    }
}

TEST(Sweep, FailingRowIsFlagged) {
    auto s = baseline();
    const auto row = evaluate_row(s, {{"bad", ModelId::CSL, {}}});
    EXPECT_FALSE(row.ok());
    EXPECT_FALSE(row.find("bad")->violated);
}

TEST(ViolationIntervals, AllFalseIsEmpty) {
    std::vector<SweepRow> rows{row_with(1, false), row_with(2, false)};
    EXPECT_TRUE(violation_intervals(rows, "m").empty());
}

TEST(ViolationIntervals, RunLengthPattern) {
    std::vector<SweepRow> rows{row_with(1, false), row_with(2, true), row_with(3, true), row_with(4, false),
                               row_with(5, true)};
    const auto iv = violation_intervals(rows, "m");
    ASSERT_EQ(iv.size(), 2u);
    EXPECT_EQ(iv[0], (RadiusInterval{2, 3}));
    EXPECT_EQ(iv[1], (RadiusInterval{5, 5}));
}

TEST(ViolationIntervals, JointEqualsIntersection) {
    SweepConfig cfg;
    cfg.scenario = baseline();
    cfg.points = 40;
    const auto rows = sweep(cfg);
    const auto csl = violation_intervals(rows, "csl");
    const auto qg = violation_intervals(rows, "qg");
    const auto joint = joint_violation_intervals(rows, {"csl", "qg"});
    EXPECT_EQ(joint, intersect(csl, qg));
    EXPECT_FALSE(csl.empty());
}

TEST(Intersect, Basic) {
    const std::vector<RadiusInterval> a{{1, 3}, {5, 9}};
    const std::vector<RadiusInterval> b{{2, 6}, {8, 10}};
    const std::vector<RadiusInterval> expected{{2, 3}, {5, 6}, {8, 9}};
    EXPECT_EQ(intersect(a, b), expected);
}
