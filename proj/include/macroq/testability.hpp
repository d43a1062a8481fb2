#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "macroq/collapse_models.hpp"
#include "macroq/expansion.hpp"
#include "macroq/qm_decoherence.hpp"
#include "macroq/scenario.hpp"

// Radius sweeps comparing the coherent expansion distance predicted by
// quantum theory with that predicted by each collapse model. A model is
// testable ("violated") at a radius when it predicts a shorter CED than
// quantum theory does.

namespace macroq {

/// A named collapse law; the same ModelId may appear with different params
/// (standard and Adler CSL).
struct ModelEntry {
    std::string name;
    ModelId id = ModelId::CSL;
    ModelParams params;
};

inline std::vector<ModelEntry> default_models() {
    return {
        {"csl", ModelId::CSL, {CslParams::standard(), false}},
        {"csl_adler", ModelId::CSL, {CslParams::adler(), false}},
        {"qg", ModelId::QG, {}},
        {"k", ModelId::K, {}},
        {"dp", ModelId::DP, {}},
    };
}

enum class RadiusGrid { Log, Linear };

struct SweepConfig {
    double radius_min = 10e-9;
    double radius_max = 500e-9;
    int points = 50;
    RadiusGrid grid = RadiusGrid::Log;
    Scenario scenario;
    std::vector<ModelEntry> models = default_models();
    /// Always integrate piecewise laws numerically instead of taking the
    /// quadratic fast path when it is valid.
    bool force_quadrature = false;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

inline void validate(const SweepConfig& config) {
    detail::require(config.points >= 2, "sweep: points must be >= 2");
    detail::require(config.radius_min > 0.0 && config.radius_min < config.radius_max,
                    "sweep: need 0 < radius_min < radius_max");
    validate(config.scenario);
}

struct ModelOutcome {
    std::string name;
    std::optional<double> ced; // nullopt: infinite
    bool violated = false;
};

struct SweepRow {
    double radius = 0.0;
    double mass = 0.0;
    std::optional<double> ced_qm;
    std::vector<ModelOutcome> models;
    std::string error; // nonempty when the row failed

    bool ok() const { return error.empty(); }

    const ModelOutcome* find(const std::string& name) const {
        for (const auto& m : models) {
            if (m.name == name) {
                return &m;
            }
        }
        return nullptr;
    }
};

/// A model CED shorter than the quantum CED. An infinite quantum CED is
/// beaten by any finite model CED; two infinities are a tie.
inline bool is_violated(const std::optional<double>& ced_model, const std::optional<double>& ced_qm) {
    if (!ced_model) {
        return false;
    }
    if (!ced_qm) {
        return true;
    }
    return *ced_model < *ced_qm;
}

inline std::vector<double> radius_grid(const SweepConfig& config) {
    validate(config);
    std::vector<double> radii(static_cast<std::size_t>(config.points));
    const double n = config.points - 1;
    for (int i = 0; i < config.points; ++i) {
        const double f = i / n;
        radii[static_cast<std::size_t>(i)] =
            config.grid == RadiusGrid::Log
                ? std::exp(std::log(config.radius_min) + f * (std::log(config.radius_max) - std::log(config.radius_min)))
                : config.radius_min + f * (config.radius_max - config.radius_min);
    }
    radii.front() = config.radius_min;
    radii.back() = config.radius_max;
    return radii;
}

inline DecoherenceSpec qm_spec(const Scenario& scenario) {
    const auto rates = qm_channel_rates(scenario);
    return {rates.total_lambda(), rates.gas_rate, std::nullopt};
}

/// Decoherence spec for a collapse law alone. Saturating laws (DP, and K
/// with saturation) use the quadratic fast path when the whole expansion up
/// to the CET stays below the saturation separation.
inline std::optional<double> model_ced(const ModelEntry& model, const Particle& particle,
                                       const ExpansionKinematics& kin, bool force_quadrature = false) {
    std::optional<double> lambda;
    std::optional<double> saturation;
    switch (model.id) {
    case ModelId::CSL:
        if (!model.params.csl) {
            throw InputError("model '" + model.name + "': CSL requires lambda0/alpha parameters");
        }
        lambda = csl_lambda(particle, *model.params.csl);
        break;
    case ModelId::QG:
        lambda = qg_lambda(particle_mass(particle));
        break;
    case ModelId::K:
        lambda = k_lambda(particle);
        if (model.params.k_saturate) {
            saturation = k_coherence_cell(particle).a_c;
        }
        break;
    case ModelId::DP:
        lambda = dp_lambda(particle);
        saturation = particle.radius;
        break;
    }
    const DecoherenceSpec quadratic{*lambda, 0.0, std::nullopt};
    if (!saturation) {
        return ced(quadratic, kin);
    }
    if (!force_quadrature) {
        const auto cet = solve_cet(quadratic, kin);
        if (cet && 2.0 * sigma(*cet, kin) < *saturation) {
            return kin.v_m * *cet;
        }
    }
    DecoherenceSpec general;
    general.general_rate = GeneralRate{model_rate_fn(model.id, particle, model.params), {*saturation}};
    return ced(general, kin);
}

/// Scenario with the radius replaced; material, environment and trap
/// (including omega and T_i) are held fixed.
inline Scenario at_radius(const Scenario& base, double radius) {
    Scenario s = base;
    s.particle.radius = radius;
    return s;
}

inline SweepRow evaluate_row(const Scenario& scenario, const std::vector<ModelEntry>& models,
                             bool force_quadrature = false) {
    SweepRow row;
    row.radius = scenario.particle.radius;
    try {
        row.mass = particle_mass(scenario.particle);
        const auto kin = kinematics_for(scenario.particle, scenario.trap);
        row.ced_qm = ced(qm_spec(scenario), kin);
        for (const auto& model : models) {
            ModelOutcome out{model.name, model_ced(model, scenario.particle, kin, force_quadrature), false};
            out.violated = is_violated(out.ced, row.ced_qm);
            row.models.push_back(std::move(out));
        }
    } catch (const std::exception& e) {
        row.error = e.what();
        row.ced_qm.reset();
        row.models.clear();
        for (const auto& model : models) {
            row.models.push_back({model.name, std::nullopt, false});
        }
    }
    return row;
}

/// One row per grid radius, ordered by radius. Rows are independent and may
/// be computed in parallel; failures are recorded per row.
inline std::vector<SweepRow> sweep(const SweepConfig& config) {
    const auto radii = radius_grid(config);
    std::vector<SweepRow> rows(radii.size());
    unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(radii.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < radii.size(); i = next++) {
            rows[i] = evaluate_row(at_radius(config.scenario, radii[i]), config.models, config.force_quadrature);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return rows;
}

struct RadiusInterval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const RadiusInterval&, const RadiusInterval&) = default;
};

namespace detail {

template <class Pred>
std::vector<RadiusInterval> runs(const std::vector<SweepRow>& rows, Pred flagged) {
    std::vector<RadiusInterval> out;
    std::optional<RadiusInterval> open;
    for (const auto& row : rows) {
        if (flagged(row)) {
            if (open) {
                open->hi = row.radius;
            } else {
                open = RadiusInterval{row.radius, row.radius};
            }
        } else if (open) {
            out.push_back(*open);
            open.reset();
        }
    }
    if (open) {
        out.push_back(*open);
    }
    return out;
}

} // namespace detail

/// Maximal runs of consecutive rows where the model is violated.
inline std::vector<RadiusInterval> violation_intervals(const std::vector<SweepRow>& rows, const std::string& model) {
    return detail::runs(rows, [&](const SweepRow& row) {
        const auto* m = row.find(model);
        return m != nullptr && m->violated;
    });
}

/// Runs where every listed model is violated at once.
inline std::vector<RadiusInterval> joint_violation_intervals(const std::vector<SweepRow>& rows,
                                                             const std::vector<std::string>& models) {
    return detail::runs(rows, [&](const SweepRow& row) {
        return std::all_of(models.begin(), models.end(), [&](const std::string& name) {
            const auto* m = row.find(name);
            return m != nullptr && m->violated;
        });
    });
}

/// Intersection of two sorted lists of closed intervals.
inline std::vector<RadiusInterval> intersect(const std::vector<RadiusInterval>& a,
                                             const std::vector<RadiusInterval>& b) {
    std::vector<RadiusInterval> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].lo, b[j].lo);
        const double hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) {
            out.push_back({lo, hi});
        }
        if (a[i].hi < b[j].hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

/// Baseline and improved-material parameter sets.
inline std::map<std::string, Scenario> scenario_presets() {
    Scenario base;
    base.label = "fig2_baseline";
    base.particle = {90e-9, 2201.0, {2.1, 2.5e-10}, {2.1, 0.57}};
    base.environment = {32.0, 1e-12, 2.0 * constants.m_u};
    base.trap = Trap{1.064e-6, 0.1, 10e-6, 2.0 * pi * 1e5, 98.0};

    Scenario left = base;
    left.label = "fig3_left";
    left.particle.permittivity_trap.imag_part = 2.5e-13;

    Scenario right = base;
    right.label = "fig3_right";
    right.particle.permittivity_trap.imag_part = 2.5e-15;
    right.particle.density = 9680.0;
    right.environment.temperature = 12.0;

    return {{base.label, base}, {left.label, left}, {right.label, right}};
}

} // namespace macroq
