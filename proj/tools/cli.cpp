#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "macroq/io/config.hpp"
#include "macroq/io/csv.hpp"
#include "macroq/macroq.hpp"

namespace macroq::cli {
namespace {

using io::format_double;
using io::format_optional;
using nlohmann::json;

constexpr double uv_wavelength = 350e-9;

/// A command failed in a way that maps onto a specific exit code.
struct CommandFailure {
    int code;
    std::string message;
};

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

/// Output file plus a side-car manifest; stdout when no path is given.
void emit(const std::string& command, const std::optional<std::string>& path, const std::string& contents,
          const json& inputs, const json& resolved, std::ostream& out,
          const std::vector<std::string>& extra_outputs = {}) {
    if (!path) {
        out << contents;
        return;
    }
    io::write_file_atomic(*path, contents);
    json outputs = json::array({*path});
    for (const auto& p : extra_outputs) {
        outputs.push_back(p);
    }
    const json manifest{
        {"command", command},   {"inputs", inputs},       {"outputs", outputs},
        {"tool_version", tool_version}, {"timestamp", utc_timestamp()}, {"resolved", resolved},
    };
    io::write_file_atomic(*path + ".manifest.json", manifest.dump(2) + "\n");
}

struct ScenarioSource {
    std::optional<std::string> path;
    std::optional<std::string> preset;
};

struct LoadedScenario {
    Scenario scenario;
    std::vector<ModelEntry> catalog;
    json input;
};

LoadedScenario load_scenario(const ScenarioSource& src) {
    LoadedScenario loaded;
    if (src.path) {
        const auto doc = io::load_json_file(*src.path);
        loaded.scenario = io::scenario_from_json(doc, *src.path);
        loaded.catalog = io::models_from_json(doc, *src.path);
        loaded.input = {{"scenario", *src.path}};
        return loaded;
    }
    const std::string name = src.preset.value_or("fig2_baseline");
    const auto presets = scenario_presets();
    const auto it = presets.find(name);
    if (it == presets.end()) {
        throw CommandFailure{exit_input, "unknown preset '" + name + "'"};
    }
    loaded.scenario = it->second;
    loaded.catalog = io::model_catalog();
    loaded.input = {{"preset", name}};
    return loaded;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<ModelEntry> select_models(const std::vector<ModelEntry>& catalog, const std::optional<std::string>& list) {
    if (!list) {
        const auto defaults = default_models();
        std::vector<ModelEntry> out;
        for (const auto& d : defaults) {
            const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const ModelEntry& m) { return m.name == d.name; });
            out.push_back(it != catalog.end() ? *it : d);
        }
        return out;
    }
    std::vector<ModelEntry> out;
    for (const auto& name : split_list(*list)) {
        const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const ModelEntry& m) { return m.name == name; });
        if (it == catalog.end()) {
            throw CommandFailure{exit_input, "unknown model '" + name + "'"};
        }
        out.push_back(*it);
    }
    if (out.empty()) {
        throw CommandFailure{exit_input, "--models selects no model"};
    }
    return out;
}

json models_to_json(const std::vector<ModelEntry>& models) {
    json arr = json::array();
    for (const auto& m : models) {
        json j{{"name", m.name}, {"model", std::string(to_string(m.id))}};
        if (m.params.csl) {
            j["lambda0_per_s"] = m.params.csl->lambda0;
            j["alpha_per_m2"] = m.params.csl->alpha;
        }
        if (m.id == ModelId::K) {
            j["saturate"] = m.params.k_saturate;
        }
        arr.push_back(j);
    }
    return arr;
}

double model_lambda(const ModelEntry& m, const Particle& p) {
    switch (m.id) {
    case ModelId::CSL: return csl_lambda(p, *m.params.csl);
    case ModelId::QG: return qg_lambda(particle_mass(p));
    case ModelId::K: return k_lambda(p);
    case ModelId::DP: return dp_lambda(p);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------

struct DecoherenceArgs {
    ScenarioSource source;
    std::optional<std::string> out;
    std::optional<std::string> models;
};

int decoherence_report(const DecoherenceArgs& args, std::ostream& out, std::ostream& err) {
    const auto loaded = load_scenario(args.source);
    const Scenario& s = loaded.scenario;
    const auto models = select_models(loaded.catalog, args.models);

    const auto rates = qm_channel_rates(s);
    const auto kin = kinematics_for(s.particle, s.trap);
    const auto spec = qm_spec(s);
    const auto cet = solve_cet(spec, kin);
    const auto ced_qm = ced(spec, kin);
    const double lambda_qm = rates.total_lambda();

    io::CsvWriter csv;
    csv.row({"quantity", "value", "unit"});
    auto put = [&](const std::string& q, const std::string& v, const std::string& unit) { csv.row({q, v, unit}); };
    put("radius", format_double(s.particle.radius), "m");
    put("particle_mass", format_double(particle_mass(s.particle)), "kg");
    put("ground_state_width_x0", format_double(kin.x0), "m");
    put("expansion_velocity_v_m", format_double(kin.v_m), "m/s");
    put("gas_rate", format_double(rates.gas_rate), "1/s");
    put("lambda_bb_scatter", format_double(rates.lambda_bb_scatter), "1/(m^2 s)");
    put("lambda_bb_absorb", format_double(rates.lambda_bb_absorb), "1/(m^2 s)");
    put("lambda_bb_emit", format_double(rates.lambda_bb_emit), "1/(m^2 s)");
    put("lambda_qm_total", format_double(lambda_qm), "1/(m^2 s)");
    put("emission_fraction", lambda_qm > 0.0 ? format_double(rates.lambda_bb_emit / lambda_qm) : "nan", "1");

    const bool has_spectrum = s.trap.internal_temperature > 0.0 && s.particle.permittivity_bb.imag_part > 0.0;
    if (has_spectrum) {
        const EmissionSpectrum spectrum(s.particle, s.trap.internal_temperature);
        put("emission_total_rate", format_double(spectrum.total_rate()), "1/s");
        put("lambda_bb_emit_from_integral", format_double(spectrum.lambda_from_integral()), "1/(m^2 s)");
        put("emit_closed_form_over_integral", format_double(rates.lambda_bb_emit / spectrum.lambda_from_integral()), "1");
    }

    put("cet_qm", format_optional(cet), "s");
    put("ced_qm", format_optional(ced_qm), "m");
    if (cet) {
        const auto vis = visibility_factor(gamma(*cet, spec, kin));
        put("amplitude_at_cet", format_double(vis.amplitude), "1");
        put("visibility_at_cet", format_double(vis.visibility), "1");
    }
    put("uv_waist_bound", format_double(uv_wavelength / 2.0), "m");
    put("ced_qm_exceeds_uv_waist", ced_qm ? (*ced_qm > uv_wavelength / 2.0 ? "1" : "0") : "1", "bool");

    const auto cell = k_coherence_cell(s.particle);
    put("k_coherence_cell_a_c", format_double(cell.a_c), "m");
    put("k_extended_body_branch", cell.extended_body ? "1" : "0", "bool");

    std::map<std::string, std::optional<double>> model_ceds;
    for (const auto& m : models) {
        const auto c = model_ced(m, s.particle, kin);
        model_ceds[m.name] = c;
        put("lambda_" + m.name, format_double(model_lambda(m, s.particle)), "1/(m^2 s)");
        put("ced_" + m.name, format_optional(c), "m");
        put("violated_" + m.name, is_violated(c, ced_qm) ? "1" : "0", "bool");
    }
    // The highlighted 90 nm point is read both as the quantum curve and as the K curve.
    put("highlight_point_ced_qm", format_optional(ced_qm), "m");
    put("highlight_point_ced_k", format_optional(model_ced({"k", ModelId::K, {}}, s.particle, kin)), "m");

    const json resolved{{"scenario", io::to_json(s)}, {"models", models_to_json(models)}};
    emit("decoherence-report", args.out, csv.str(), loaded.input, resolved, out);

    std::ostream& summary = args.out ? out : err;
    summary << "scenario " << s.label << ": Lambda_qm = " << format_double(lambda_qm) << " 1/(m^2 s)";
    if (lambda_qm > 0.0) {
        summary << " (emission " << std::setprecision(4) << 100.0 * rates.lambda_bb_emit / lambda_qm << " %)";
    }
    summary << "\n";
    if (cet) {
        summary << "CET = " << format_double(*cet) << " s, CED = " << format_double(*ced_qm) << " m\n";
    } else {
        summary << "CET: infinite (no decoherence)\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct TestabilityArgs {
    ScenarioSource source;
    std::optional<std::string> out;
    std::optional<std::string> intervals;
    std::optional<std::string> models;
    std::optional<std::string> joint;
    int points = 50;
    double radius_min = 10e-9;
    double radius_max = 500e-9;
    std::string grid = "log";
    unsigned threads = 0;
    bool force_quadrature = false;
};

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::vector<ModelEntry>& models) {
    io::CsvWriter csv;
    std::vector<std::string> header{"radius_m", "mass_kg", "ced_qm_m"};
    for (const auto& m : models) {
        header.push_back("ced_" + m.name + "_m");
        header.push_back("violated_" + m.name);
    }
    header.push_back("error");
    csv.row(header);
    for (const auto& row : rows) {
        std::vector<std::string> fields{format_double(row.radius), format_double(row.mass), format_optional(row.ced_qm)};
        for (const auto& m : row.models) {
            fields.push_back(row.ok() ? format_optional(m.ced) : "nan");
            fields.push_back(m.violated ? "1" : "0");
        }
        fields.push_back(row.error);
        csv.row(fields);
    }
    return csv.str();
}

int testability(const TestabilityArgs& args, std::ostream& out, std::ostream& err) {
    const auto loaded = load_scenario(args.source);
    SweepConfig config;
    config.scenario = loaded.scenario;
    config.models = select_models(loaded.catalog, args.models);
    config.points = args.points;
    config.radius_min = args.radius_min;
    config.radius_max = args.radius_max;
    if (args.grid != "log" && args.grid != "linear") {
        throw CommandFailure{exit_input, "--grid must be 'log' or 'linear'"};
    }
    config.grid = args.grid == "log" ? RadiusGrid::Log : RadiusGrid::Linear;
    config.threads = args.threads;
    config.force_quadrature = args.force_quadrature;
    validate(config);

    const auto rows = sweep(config);
    std::size_t failed = 0;
    for (const auto& row : rows) {
        if (!row.ok()) {
            ++failed;
            err << "warning: radius " << format_double(row.radius) << " m: " << row.error << "\n";
        }
    }

    io::CsvWriter intervals;
    intervals.row({"model", "r_lo_m", "r_hi_m"});
    for (const auto& m : config.models) {
        for (const auto& iv : violation_intervals(rows, m.name)) {
            intervals.row({m.name, format_double(iv.lo), format_double(iv.hi)});
        }
    }
    if (args.joint) {
        const auto names = split_list(*args.joint);
        for (const auto& n : names) {
            if (std::none_of(config.models.begin(), config.models.end(), [&](const ModelEntry& m) { return m.name == n; })) {
                throw CommandFailure{exit_input, "--joint names model '" + n + "' that is not in --models"};
            }
        }
        std::string label;
        for (const auto& n : names) {
            label += (label.empty() ? "" : "&") + n;
        }
        for (const auto& iv : joint_violation_intervals(rows, names)) {
            intervals.row({label, format_double(iv.lo), format_double(iv.hi)});
        }
    }

    const json resolved{
        {"scenario", io::to_json(config.scenario)},
        {"models", models_to_json(config.models)},
        {"points", config.points},
        {"radius_min_m", config.radius_min},
        {"radius_max_m", config.radius_max},
        {"grid", args.grid},
        {"force_quadrature", config.force_quadrature},
    };
    const auto csv = sweep_csv(rows, config.models);
    if (args.out) {
        const std::string intervals_path = args.intervals.value_or(*args.out + ".intervals.csv");
        io::write_file_atomic(intervals_path, intervals.str());
        emit("testability", args.out, csv, loaded.input, resolved, out, {intervals_path});
        out << rows.size() << " rows written to " << *args.out << ", intervals to " << intervals_path << "\n";
    } else {
        out << csv << "\n" << intervals.str();
    }
    if (failed == rows.size()) {
        err << "error: every row failed\n";
        return exit_computation;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct VacuumArgs {
    std::optional<std::string> materials;
    std::vector<std::string> select;
    std::optional<std::string> out;
    double sphere_radius = 200e-9;
    double time = 0.0;
    double temperature = 300.0;
    std::optional<double> dilution_distance;
    std::optional<double> patch_diameter;
    std::optional<double> cold_temperature;
    std::optional<double> activation_energy;
};

int vacuum_report(const VacuumArgs& args, std::ostream& out, std::ostream&) {
    io::MaterialTables tables;
    json inputs;
    if (args.materials) {
        tables = io::load_materials(*args.materials);
        inputs = {{"materials", *args.materials}};
    } else {
        tables.dominant_species = dominant_species_table();
        tables.summary = outgassing_summary_table();
        inputs = {{"materials", "builtin"}};
    }
    std::vector<OutgassingTableRow> rows;
    if (args.select.empty()) {
        rows = tables.summary;
    } else {
        for (const auto& name : args.select) {
            const auto it = std::find_if(tables.summary.begin(), tables.summary.end(),
                                         [&](const OutgassingTableRow& r) { return r.material == name; });
            if (it == tables.summary.end()) {
                throw CommandFailure{exit_input, "unknown material '" + name + "'"};
            }
            rows.push_back(*it);
        }
    }
    if (args.patch_diameter.has_value() != args.dilution_distance.has_value()) {
        throw CommandFailure{exit_input, "--patch-diameter and --dilution-distance must be given together"};
    }
    if (args.cold_temperature.has_value() != args.activation_energy.has_value()) {
        throw CommandFailure{exit_input, "--cold-temperature and --activation-energy must be given together"};
    }

    io::CsvWriter csv;
    std::vector<std::string> header{"material",        "outgassing_kg_per_s", "species_mass_u",      "residence_time_h",
                                    "gamma_per_m2_s",  "pressure_mbar",       "density_per_m3",      "collision_rate_per_s",
                                    "emitting_area_m2"};
    if (args.dilution_distance) {
        header.insert(header.end(), {"dilution_factor", "diluted_density_per_m3", "diluted_collision_rate_per_s"});
    }
    if (args.cold_temperature) {
        header.insert(header.end(), {"attenuation_factor", "cold_pressure_mbar"});
    }
    csv.row(header);

    for (const auto& r : rows) {
        const double species_mass = r.species_mass_u * constants.m_u;
        const double tau = r.residence_time_h * seconds_per_hour;
        // Dominant species only: m_tot TML/100 = D_out(0) tau, area implied by the printed gamma.
        const double area = r.gamma > 0.0 ? r.outgassing_kg_per_s / (species_mass * r.gamma) : 0.0;
        MaterialOutgassing material{r.material, r.outgassing_kg_per_s * tau, {{100.0, tau, species_mass}}, area};
        const double d_out = outgassing_rate(material, args.time);
        const double gamma0 = area > 0.0 ? emission_rate(material, args.time) : 0.0;
        const auto gas = steady_state(gamma0, args.temperature, species_mass);
        const double coll = collision_rate(gamma0, args.sphere_radius);

        std::vector<std::string> fields{r.material,
                                        format_double(d_out),
                                        format_double(r.species_mass_u),
                                        format_double(r.residence_time_h),
                                        format_double(gamma0),
                                        format_double(gas.pressure / pascal_per_mbar),
                                        format_double(gas.number_density),
                                        format_double(coll),
                                        format_double(area)};
        if (args.dilution_distance) {
            const double patch_area = pi * 0.25 * *args.patch_diameter * *args.patch_diameter;
            const double factor = dilution(PatchSource{patch_area}, 1.0, *args.dilution_distance);
            fields.insert(fields.end(), {format_double(factor), format_double(factor * gas.number_density),
                                         format_double(factor * coll)});
        }
        if (args.cold_temperature) {
            const double fa = pressure_attenuation(*args.activation_energy, args.temperature, *args.cold_temperature);
            fields.insert(fields.end(), {format_double(fa), format_double(gas.pressure / pascal_per_mbar / fa)});
        }
        csv.row(fields);
    }

    json resolved{{"sphere_radius_m", args.sphere_radius}, {"time_s", args.time}, {"temperature_K", args.temperature},
                  {"materials", args.select}};
    if (args.dilution_distance) {
        resolved["dilution_distance_m"] = *args.dilution_distance;
        resolved["patch_diameter_m"] = *args.patch_diameter;
    }
    if (args.cold_temperature) {
        resolved["cold_temperature_K"] = *args.cold_temperature;
        resolved["activation_energy_room_units"] = *args.activation_energy;
    }
    emit("vacuum-report", args.out, csv.str(), inputs, resolved, out);
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct MissionArgs {
    std::optional<std::string> orbit;
    std::optional<std::string> ledgers;
    std::optional<std::string> out;
    bool orbit_section = true;
    bool budget_section = true;
};

int mission_report(const std::string& command, const MissionArgs& args, std::ostream& out, std::ostream& err) {
    json inputs = json::object();
    io::OrbitConfig orbit_cfg;
    orbit_cfg.orbit = maqro_heo();
    if (args.orbit) {
        orbit_cfg = io::orbit_from_json(io::load_json_file(*args.orbit), *args.orbit);
        inputs["orbit"] = *args.orbit;
    } else {
        inputs["orbit"] = "builtin:maqro_heo";
    }
    std::vector<BudgetLedger> ledgers;
    if (args.ledgers) {
        ledgers = io::ledgers_from_json(io::load_json_file(*args.ledgers), *args.ledgers);
        inputs["ledgers"] = *args.ledgers;
    } else {
        ledgers = mission_ledgers();
        inputs["ledgers"] = "builtin";
    }
    if (args.budget_section && ledgers.empty()) {
        throw CommandFailure{exit_input, "no ledgers given"};
    }

    io::CsvWriter csv;
    csv.row({"quantity", "computed", "reference", "unit"});
    std::ostream& summary = args.out ? out : err;
    int status = exit_ok;

    if (args.orbit_section) {
        const auto& o = orbit_cfg.orbit;
        const double period = orbital_period(o);
        const auto g = local_gravity(o, o.perigee_altitude);
        const double window = altitude_window(o, orbit_cfg.band_lo, orbit_cfg.band_hi);
        const auto acc = integrated_accuracy(orbit_cfg.accel_psd, window, 1.0);
        const auto acc_g = integrated_accuracy(orbit_cfg.accel_psd, window, g.acceleration);
        const double thruster_accel = acceleration_noise_from_force(1e-8, 2000.0);
        constexpr double stated_thruster_psd = 5e-10; // m/s^2/sqrt(Hz)
        csv.row({"orbital_period", format_double(period / seconds_per_day), "22", "day"});
        csv.row({"perigee_gravity", format_double(g.acceleration), "", "m/s^2"});
        csv.row({"perigee_gravity_fraction", format_double(g.fraction_of_g), "0.4", "g"});
        csv.row({"perigee_window", format_double(window / 60.0), "20.2", "min"});
        csv.row({"integrated_accuracy", format_double(acc.absolute), "5e-15", "m/s^2"});
        csv.row({"integrated_accuracy_fraction_of_perigee_g", format_double(acc_g.fractional), "", "1"});
        csv.row({"thruster_acceleration_noise", format_double(thruster_accel), "5e-10", "m/s^2/sqrt(Hz)"});
        csv.row({"thruster_position_noise_10s", format_double(thruster_position_noise(thruster_accel, 10.0)), "<4e-11", "m"});
        csv.row({"thruster_position_noise_200s", format_double(thruster_position_noise(thruster_accel, 200.0)), "<1e-9", "m"});
        csv.row({"thruster_position_noise_10s_at_5e-10",
                 format_double(thruster_position_noise(stated_thruster_psd, 10.0)), "", "m"});
        csv.row({"thruster_position_noise_200s_at_5e-10",
                 format_double(thruster_position_noise(stated_thruster_psd, 200.0)), "", "m"});
        summary << "period " << format_double(period / seconds_per_day) << " d (target 22), perigee g "
                << format_double(g.fraction_of_g) << " g (target 0.4), window " << format_double(window / 60.0)
                << " min (target 20.2)\n";
    }
    if (args.budget_section) {
        for (const auto& ledger : ledgers) {
            const auto check = budget_check(ledger);
            csv.row({"ledger_" + ledger.name + "_total", format_double(check.computed_total),
                     format_double(check.declared_total), ledger.unit});
            csv.row({"ledger_" + ledger.name + "_delta", format_double(check.delta), "0", ledger.unit});
            if (!check.consistent()) {
                err << "warning: ledger '" << ledger.name << "' items sum to " << format_double(check.computed_total)
                    << " " << ledger.unit << " but declare " << format_double(check.declared_total) << "\n";
                status = exit_computation;
            }
        }
    }

    json resolved{{"orbit",
                   {{"apogee_altitude_m", orbit_cfg.orbit.apogee_altitude},
                    {"perigee_altitude_m", orbit_cfg.orbit.perigee_altitude},
                    {"body_radius_m", orbit_cfg.orbit.body_radius},
                    {"body_mu_m3_s2", orbit_cfg.orbit.body_mu},
                    {"inclination_deg", orbit_cfg.orbit.inclination_deg}}},
                  {"perigee_band_m", {orbit_cfg.band_lo, orbit_cfg.band_hi}},
                  {"accel_psd_m_s2_rtHz", orbit_cfg.accel_psd},
                  {"ledgers", json::array()}};
    for (const auto& l : ledgers) {
        json items = json::array();
        for (const auto& i : l.items) {
            items.push_back({{"name", i.name}, {"value", i.value}});
        }
        resolved["ledgers"].push_back({{"name", l.name}, {"unit", l.unit}, {"items", items}, {"declared_total", l.declared_total}});
    }
    emit(command, args.out, csv.str(), inputs, resolved, out);
    return status;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Feasibility analysis for macroscopic quantum superposition experiments in space", "macroq"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    auto add_scenario = [](CLI::App* sub, ScenarioSource& src) {
        auto* s = sub->add_option("--scenario", src.path, "Scenario JSON file")->check(CLI::ExistingFile);
        sub->add_option("--preset", src.preset, "Built-in scenario: fig2_baseline, fig3_left, fig3_right")->excludes(s);
    };

    DecoherenceArgs dec;
    auto* dec_cmd = app.add_subcommand("decoherence-report", "Per-channel decoherence, CET/CED and model comparison");
    add_scenario(dec_cmd, dec.source);
    dec_cmd->add_option("--out", dec.out, "Output CSV (stdout when omitted)");
    dec_cmd->add_option("--models", dec.models, "Comma-separated model names");

    TestabilityArgs tst;
    auto* tst_cmd = app.add_subcommand("testability", "Radius sweep of quantum vs collapse-model CED");
    add_scenario(tst_cmd, tst.source);
    tst_cmd->add_option("--out", tst.out, "Sweep CSV");
    tst_cmd->add_option("--intervals", tst.intervals, "Violation intervals CSV (default <out>.intervals.csv)");
    tst_cmd->add_option("--models", tst.models, "Comma-separated model names (csl,csl_adler,qg,k,dp,k_saturated)");
    tst_cmd->add_option("--joint", tst.joint, "Also report radii where all listed models are violated");
    tst_cmd->add_option("--points", tst.points, "Grid points")->check(CLI::Range(2, 1000000));
    tst_cmd->add_option("--radius-min", tst.radius_min, "Smallest radius [m]")->check(CLI::PositiveNumber);
    tst_cmd->add_option("--radius-max", tst.radius_max, "Largest radius [m]")->check(CLI::PositiveNumber);
    tst_cmd->add_option("--grid", tst.grid, "log or linear");
    tst_cmd->add_option("--threads", tst.threads, "Worker threads (0 = all cores)");
    tst_cmd->add_flag("--force-quadrature", tst.force_quadrature, "Integrate piecewise laws numerically");

    VacuumArgs vac;
    auto* vac_cmd = app.add_subcommand("vacuum-report", "Outgassing summary: gamma, P, n, collision rate");
    vac_cmd->add_option("--materials", vac.materials, "Materials JSON (built-in tables when omitted)")->check(CLI::ExistingFile);
    vac_cmd->add_option("--material", vac.select, "Restrict to the named material (repeatable)");
    vac_cmd->add_option("--out", vac.out, "Output CSV");
    vac_cmd->add_option("--sphere-radius", vac.sphere_radius, "Test sphere radius [m]")->check(CLI::NonNegativeNumber);
    vac_cmd->add_option("--time", vac.time, "Time since start of outgassing [s]")->check(CLI::NonNegativeNumber);
    vac_cmd->add_option("--temperature", vac.temperature, "Gas temperature [K]")->check(CLI::PositiveNumber);
    vac_cmd->add_option("--dilution-distance", vac.dilution_distance, "Distance to emitting patch [m]")->check(CLI::PositiveNumber);
    vac_cmd->add_option("--patch-diameter", vac.patch_diameter, "Emitting patch diameter [m]")->check(CLI::PositiveNumber);
    vac_cmd->add_option("--cold-temperature", vac.cold_temperature, "Temperature for attenuation [K]")->check(CLI::PositiveNumber);
    vac_cmd->add_option("--activation-energy", vac.activation_energy, "Activation energy [k_B * 300 K]")->check(CLI::NonNegativeNumber);

    MissionArgs mis;
    auto add_mission = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--orbit", mis.orbit, "Orbit JSON (built-in HEO when omitted)")->check(CLI::ExistingFile);
        sub->add_option("--ledgers", mis.ledgers, "Ledger JSON (built-in tables when omitted)")->check(CLI::ExistingFile);
        sub->add_option("--out", mis.out, "Output CSV");
        return sub;
    };
    auto* mis_cmd = add_mission("mission-report", "Orbit numbers and budget ledgers");
    auto* orb_cmd = add_mission("orbit-report", "Orbit numbers only");
    auto* bud_cmd = add_mission("case-budget", "Budget ledgers only");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }

    try {
        if (dec_cmd->parsed()) {
            return decoherence_report(dec, out, err);
        }
        if (tst_cmd->parsed()) {
            return testability(tst, out, err);
        }
        if (vac_cmd->parsed()) {
            return vacuum_report(vac, out, err);
        }
        if (mis_cmd->parsed()) {
            return mission_report("mission-report", mis, out, err);
        }
        if (orb_cmd->parsed()) {
            mis.budget_section = false;
            return mission_report("orbit-report", mis, out, err);
        }
        if (bud_cmd->parsed()) {
            mis.orbit_section = false;
            return mission_report("case-budget", mis, out, err);
        }
    } catch (const CommandFailure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_computation;
    }
    return exit_input;
}

} // namespace macroq::cli
