#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "macroq/constants.hpp"
#include "macroq/errors.hpp"
#include "macroq/mission.hpp"
#include "macroq/scenario.hpp"
#include "macroq/testability.hpp"
#include "macroq/vacuum.hpp"

// JSON configuration documents. Keys carry their unit as a suffix; mbar, km,
// nm, hours and atomic mass units are converted to SI on load.

namespace macroq::io {

using nlohmann::json;

/// Malformed or incomplete configuration; `field` is the dotted key path.
class ConfigError : public InputError {
public:
    ConfigError(const std::string& source, const std::string& field, const std::string& message)
        : InputError(source + ": " + (field.empty() ? "" : "field '" + field + "': ") + message), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

inline json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ConfigError(source, "", "parse error at line " + std::to_string(line) + ": " + e.what());
    }
}

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError(path.string(), "", "cannot open file");
    }
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_json_text(text, path.string());
}

/// Typed field access that reports the dotted path on failure.
class Reader {
public:
    Reader(const json& node, std::string source, std::string path = {})
        : node_(node), source_(std::move(source)), path_(std::move(path)) {}

    bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }

    Reader child(const std::string& key) const {
        if (!has(key)) {
            throw ConfigError(source_, join(key), "missing required field");
        }
        const auto& n = node_.at(key);
        if (!n.is_object()) {
            throw ConfigError(source_, join(key), "expected an object");
        }
        return Reader(n, source_, join(key));
    }

    double number(const std::string& key) const {
        if (!has(key)) {
            throw ConfigError(source_, join(key), "missing required field");
        }
        return as_number(key);
    }

    std::optional<double> optional_number(const std::string& key) const {
        if (!has(key)) {
            return std::nullopt;
        }
        return as_number(key);
    }

    /// First present key among alternatives, each with its SI scale factor.
    /// One of several unit alternatives; giving more than one is an error.
    double number_any(std::initializer_list<std::pair<const char*, double>> keys) const {
        if (auto v = optional_number_any(keys)) {
            return *v;
        }
        throw ConfigError(source_, join(keys.begin()->first), "missing required field");
    }

    std::optional<double> optional_number_any(std::initializer_list<std::pair<const char*, double>> keys) const {
        std::optional<double> value;
        const char* found = nullptr;
        for (const auto& [key, scale] : keys) {
            if (!has(key)) {
                continue;
            }
            if (found != nullptr) {
                throw ConfigError(source_, join(key), std::string("conflicts with '") + join(found) + "'; give only one");
            }
            found = key;
            value = as_number(key) * scale;
        }
        return value;
    }

    std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) const {
        if (!has(key)) {
            if (fallback) {
                return *fallback;
            }
            throw ConfigError(source_, join(key), "missing required field");
        }
        const auto& n = node_.at(key);
        if (!n.is_string()) {
            throw ConfigError(source_, join(key), "expected a string");
        }
        return n.get<std::string>();
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const auto& n = node_.at(key);
        if (!n.is_boolean()) {
            throw ConfigError(source_, join(key), "expected true or false");
        }
        return n.get<bool>();
    }

    std::vector<Reader> array(const std::string& key) const {
        if (!has(key)) {
            throw ConfigError(source_, join(key), "missing required field");
        }
        const auto& n = node_.at(key);
        if (!n.is_array()) {
            throw ConfigError(source_, join(key), "expected an array");
        }
        std::vector<Reader> out;
        for (std::size_t i = 0; i < n.size(); ++i) {
            out.emplace_back(n[i], source_, join(key) + "[" + std::to_string(i) + "]");
        }
        return out;
    }

    const std::string& source() const { return source_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        throw ConfigError(source_, join(key), message);
    }

private:
    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    double as_number(const std::string& key) const {
        const auto& n = node_.at(key);
        if (!n.is_number()) {
            throw ConfigError(source_, join(key), "expected a number");
        }
        return n.get<double>();
    }

    const json& node_;
    std::string source_;
    std::string path_;
};

namespace detail {

inline ComplexPermittivity read_permittivity(const Reader& r) {
    return {r.number("re"), r.number("im")};
}

/// Runs the library validators and rethrows with the field path.
template <class T>
void check(const Reader& r, const std::string& key, const T& value) {
    try {
        validate(value);
    } catch (const InputError& e) {
        r.fail(key, e.what());
    }
}

} // namespace detail

inline Scenario scenario_from_json(const json& doc, const std::string& source) {
    const Reader root(doc, source);
    Scenario s;
    s.label = root.string("label", std::string("scenario"));

    const auto p = root.child("particle");
    s.particle.radius = p.number_any({{"radius_m", 1.0}, {"radius_nm", 1e-9}});
    s.particle.density = p.number("density_kg_m3");
    s.particle.permittivity_trap = detail::read_permittivity(p.child("permittivity_trap"));
    s.particle.permittivity_bb = detail::read_permittivity(p.child("permittivity_bb"));
    detail::check(root, "particle", s.particle);

    const auto e = root.child("environment");
    s.environment.temperature = e.number("temperature_K");
    s.environment.pressure = e.number_any({{"pressure_Pa", 1.0}, {"pressure_mbar", pascal_per_mbar}});
    s.environment.gas_particle_mass =
        e.number_any({{"gas_particle_mass_kg", 1.0}, {"gas_particle_mass_u", constants.m_u}});
    detail::check(root, "environment", s.environment);

    const auto t = root.child("trap");
    s.trap.wavelength = t.number("wavelength_m");
    s.trap.power = t.number("power_W");
    s.trap.waist = t.number("waist_m");
    s.trap.angular_frequency = t.optional_number("angular_frequency_rad_s").value_or(2.0 * pi * 1e5);
    s.trap.internal_temperature = t.number("internal_temperature_K");
    detail::check(root, "trap", s.trap);
    return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    return scenario_from_json(load_json_file(path), path.string());
}

inline json to_json(const Scenario& s) {
    return {
        {"label", s.label},
        {"particle",
         {{"radius_m", s.particle.radius},
          {"density_kg_m3", s.particle.density},
          {"permittivity_trap", {{"re", s.particle.permittivity_trap.real_part}, {"im", s.particle.permittivity_trap.imag_part}}},
          {"permittivity_bb", {{"re", s.particle.permittivity_bb.real_part}, {"im", s.particle.permittivity_bb.imag_part}}}}},
        {"environment",
         {{"temperature_K", s.environment.temperature},
          {"pressure_Pa", s.environment.pressure},
          {"gas_particle_mass_kg", s.environment.gas_particle_mass}}},
        {"trap",
         {{"wavelength_m", s.trap.wavelength},
          {"power_W", s.trap.power},
          {"waist_m", s.trap.waist},
          {"angular_frequency_rad_s", s.trap.angular_frequency},
          {"internal_temperature_K", s.trap.internal_temperature}}},
    };
}

inline std::optional<ModelId> parse_model_id(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
    if (name == "CSL") return ModelId::CSL;
    if (name == "QG") return ModelId::QG;
    if (name == "K") return ModelId::K;
    if (name == "DP") return ModelId::DP;
    return std::nullopt;
}

/// Built-in named collapse laws: the default five plus the saturated K model.
inline std::vector<ModelEntry> model_catalog() {
    auto models = default_models();
    models.push_back({"k_saturated", ModelId::K, {std::nullopt, true}});
    return models;
}

/// Optional "models" array in a scenario document; entries override or
/// extend the catalog by name.
inline std::vector<ModelEntry> models_from_json(const json& doc, const std::string& source) {
    auto catalog = model_catalog();
    const Reader root(doc, source);
    if (!root.has("models")) {
        return catalog;
    }
    for (const auto& m : root.array("models")) {
        ModelEntry entry;
        entry.name = m.string("name");
        const auto id = parse_model_id(m.string("model"));
        if (!id) {
            m.fail("model", "unknown model (expected CSL, QG, K or DP)");
        }
        entry.id = *id;
        if (entry.id == ModelId::CSL) {
            entry.params.csl = CslParams{m.number("lambda0_per_s"), m.number("alpha_per_m2")};
            detail::check(m, "lambda0_per_s", *entry.params.csl);
        }
        entry.params.k_saturate = m.boolean("saturate", false);
        auto it = std::find_if(catalog.begin(), catalog.end(), [&](const ModelEntry& e) { return e.name == entry.name; });
        if (it != catalog.end()) {
            *it = entry;
        } else {
            catalog.push_back(entry);
        }
    }
    return catalog;
}

struct MaterialTables {
    std::vector<DominantSpeciesRow> dominant_species;
    std::vector<OutgassingTableRow> summary;
};

inline MaterialTables materials_from_json(const json& doc, const std::string& source) {
    const Reader root(doc, source);
    MaterialTables tables;
    if (root.has("dominant_species_300K")) {
        for (const auto& r : root.array("dominant_species_300K")) {
            tables.dominant_species.push_back({r.string("material"), r.number("tml_percent"), r.number("residence_time_h")});
        }
    }
    for (const auto& r : root.array("summary_300K")) {
        OutgassingTableRow row;
        row.material = r.string("material");
        row.outgassing_kg_per_s = r.number("outgassing_kg_per_s");
        row.species_mass_u = r.number("species_mass_u");
        row.residence_time_h = r.number("residence_time_h");
        row.gamma = r.number("gamma_per_m2_s");
        row.pressure_mbar = r.optional_number("pressure_mbar").value_or(0.0);
        row.density = r.optional_number("density_per_m3").value_or(0.0);
        row.collision_rate = r.optional_number("collision_rate_per_s").value_or(0.0);
        if (row.species_mass_u <= 0.0) r.fail("species_mass_u", "must be > 0");
        if (row.residence_time_h <= 0.0) r.fail("residence_time_h", "must be > 0");
        if (row.gamma < 0.0) r.fail("gamma_per_m2_s", "must be >= 0");
        tables.summary.push_back(row);
    }
    return tables;
}

inline MaterialTables load_materials(const std::filesystem::path& path) {
    return materials_from_json(load_json_file(path), path.string());
}

struct OrbitConfig {
    OrbitElements orbit;
    double band_lo = 3800e3; // m
    double band_hi = 4500e3; // m
    double accel_psd = 2.5e-13; // (m/s^2)/sqrt(Hz)
};

inline OrbitConfig orbit_from_json(const json& doc, const std::string& source) {
    const Reader root(doc, source);
    OrbitConfig cfg;
    const auto o = root.child("orbit");
    cfg.orbit.apogee_altitude = o.number_any({{"apogee_altitude_m", 1.0}, {"apogee_altitude_km", 1e3}});
    cfg.orbit.perigee_altitude = o.number_any({{"perigee_altitude_m", 1.0}, {"perigee_altitude_km", 1e3}});
    cfg.orbit.body_radius = o.optional_number_any({{"body_radius_m", 1.0}, {"body_radius_km", 1e3}}).value_or(6.371e6);
    cfg.orbit.body_mu = o.optional_number("body_mu_m3_s2").value_or(3.986004418e14);
    cfg.orbit.inclination_deg = o.optional_number("inclination_deg").value_or(0.0);
    detail::check(root, "orbit", cfg.orbit);
    if (root.has("perigee_band")) {
        const auto b = root.child("perigee_band");
        cfg.band_lo = b.number_any({{"lo_m", 1.0}, {"lo_km", 1e3}});
        cfg.band_hi = b.number_any({{"hi_m", 1.0}, {"hi_km", 1e3}});
    }
    cfg.accel_psd = root.optional_number("accel_psd_m_s2_rtHz").value_or(cfg.accel_psd);
    return cfg;
}

inline std::vector<BudgetLedger> ledgers_from_json(const json& doc, const std::string& source) {
    const Reader root(doc, source);
    std::vector<BudgetLedger> out;
    for (const auto& l : root.array("ledgers")) {
        BudgetLedger ledger;
        ledger.name = l.string("name");
        ledger.unit = l.string("unit");
        for (const auto& item : l.array("items")) {
            ledger.items.push_back({item.string("name"), item.number("value")});
        }
        if (ledger.items.empty()) {
            l.fail("items", "ledger must contain at least one item");
        }
        ledger.declared_total = l.number("declared_total");
        out.push_back(std::move(ledger));
    }
    return out;
}

} // namespace macroq::io
