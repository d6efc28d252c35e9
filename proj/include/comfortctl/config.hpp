#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "comfortctl/errors.hpp"
#include "comfortctl/occupant.hpp"
#include "comfortctl/thermal.hpp"
#include "comfortctl/weather.hpp"

namespace comfortctl {

struct SweepConfig {
    double delta_min = 0.0;
    double delta_max = 3.0;
    double step = 0.03;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

// One stretch of a simulation, in whole-scenario day units. Carries either a
// common tolerance for every occupant or a fixed target band.
struct ScheduleEntry {
    double start_day = 0.0;
    double end_day = 0.0;
    std::optional<double> tolerance;
    std::optional<std::array<double, 2>> band;

    friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct SimulationConfig {
    std::uint64_t seed = 0;
    int days = 7;
    std::array<double, 2> daily_min_range{9.0, 13.0};
    std::array<double, 2> daily_max_range{20.0, 25.0};
    int samples_per_day = 240;
    ThermalParams thermal{};
    std::optional<double> initial_room_temp;
    std::vector<ScheduleEntry> schedule;

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

struct OutputConfig {
    std::string directory = ".";
    std::string format = "csv";  // "csv" or "json"

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ScenarioConfig {
    std::vector<Occupant> occupants;
    double power_coefficient = 1.0;  // mu in the power model
    std::optional<SweepConfig> sweep;
    std::optional<SimulationConfig> simulation;
    OutputConfig output{};

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void config_fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

inline void expect_object(const json& j, const std::string& path,
                          std::initializer_list<const char*> allowed) {
    if (!j.is_object()) config_fail(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* key) { return it.key() == key; });
        if (!known) config_fail(path + "." + it.key(), "unknown field");
    }
}

inline double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) config_fail(path, "expected a number");
    return j.get<double>();
}

inline int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) config_fail(path, "expected an integer");
    return j.get<int>();
}

inline std::uint64_t as_seed(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        config_fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) config_fail(path, "expected a string");
    return j.get<std::string>();
}

inline std::array<double, 2> as_range(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) config_fail(path, "expected an array of two numbers");
    return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

inline ControlSign parse_control_sign(const std::string& text, const std::string& path) {
    if (text == "stabilizing") return ControlSign::Stabilizing;
    if (text == "inverted") return ControlSign::Inverted;
    config_fail(path, "expected \"stabilizing\" or \"inverted\"");
}

inline Occupant parse_occupant(const json& j, const std::string& path, int index) {
    expect_object(j, path, {"id", "ideal_temp", "sensitivity", "tolerance"});
    Occupant o;
    o.id = j.contains("id") ? as_int(j["id"], path + ".id") : index + 1;
    if (!j.contains("ideal_temp")) config_fail(path + ".ideal_temp", "missing");
    o.ideal_temp = as_number(j["ideal_temp"], path + ".ideal_temp");
    if (!j.contains("sensitivity")) config_fail(path + ".sensitivity", "missing");
    o.sensitivity = as_number(j["sensitivity"], path + ".sensitivity");
    if (j.contains("tolerance")) o.tolerance = as_number(j["tolerance"], path + ".tolerance");
    return o;
}

inline ThermalParams parse_thermal(const json& j, const std::string& path) {
    expect_object(j, path, {"heat_exchange", "control_gain", "dt", "control_sign", "hysteresis"});
    ThermalParams p;
    if (j.contains("heat_exchange")) p.heat_exchange = as_number(j["heat_exchange"], path + ".heat_exchange");
    if (j.contains("control_gain")) p.control_gain = as_number(j["control_gain"], path + ".control_gain");
    if (j.contains("dt")) p.dt = as_number(j["dt"], path + ".dt");
    if (j.contains("control_sign"))
        p.control_sign = parse_control_sign(as_string(j["control_sign"], path + ".control_sign"),
                                            path + ".control_sign");
    if (j.contains("hysteresis")) p.hysteresis = as_number(j["hysteresis"], path + ".hysteresis");
    return p;
}

inline ScheduleEntry parse_schedule_entry(const json& j, const std::string& path) {
    expect_object(j, path, {"start_day", "end_day", "tolerance", "band"});
    ScheduleEntry e;
    if (!j.contains("start_day")) config_fail(path + ".start_day", "missing");
    e.start_day = as_number(j["start_day"], path + ".start_day");
    if (!j.contains("end_day")) config_fail(path + ".end_day", "missing");
    e.end_day = as_number(j["end_day"], path + ".end_day");
    if (j.contains("tolerance")) e.tolerance = as_number(j["tolerance"], path + ".tolerance");
    if (j.contains("band")) e.band = as_range(j["band"], path + ".band");
    return e;
}

inline SimulationConfig parse_simulation(const json& j, const std::string& path) {
    expect_object(j, path,
                  {"seed", "days", "daily_min_range", "daily_max_range", "samples_per_day",
                   "thermal", "initial_room_temp", "schedule"});
    SimulationConfig sim;
    if (j.contains("seed")) sim.seed = as_seed(j["seed"], path + ".seed");
    if (j.contains("days")) sim.days = as_int(j["days"], path + ".days");
    if (j.contains("daily_min_range"))
        sim.daily_min_range = as_range(j["daily_min_range"], path + ".daily_min_range");
    if (j.contains("daily_max_range"))
        sim.daily_max_range = as_range(j["daily_max_range"], path + ".daily_max_range");
    if (j.contains("samples_per_day"))
        sim.samples_per_day = as_int(j["samples_per_day"], path + ".samples_per_day");
    if (j.contains("thermal")) sim.thermal = parse_thermal(j["thermal"], path + ".thermal");
    if (j.contains("initial_room_temp"))
        sim.initial_room_temp = as_number(j["initial_room_temp"], path + ".initial_room_temp");
    if (j.contains("schedule")) {
        if (!j["schedule"].is_array()) config_fail(path + ".schedule", "expected an array");
        for (std::size_t i = 0; i < j["schedule"].size(); ++i)
            sim.schedule.push_back(parse_schedule_entry(
                j["schedule"][i], path + ".schedule[" + std::to_string(i) + "]"));
    }
    return sim;
}

}  // namespace detail

inline OutdoorProfile make_profile(const SimulationConfig& sim) {
    OutdoorProfile p;
    p.seed = sim.seed;
    p.days = sim.days;
    p.daily_min_range = sim.daily_min_range;
    p.daily_max_range = sim.daily_max_range;
    p.samples_per_day = sim.samples_per_day;
    return p;
}

// Day-based schedule entries converted to simulation time units (hours).
inline std::vector<BandSegment> make_schedule(const SimulationConfig& sim) {
    std::vector<BandSegment> segments;
    segments.reserve(sim.schedule.size());
    for (const ScheduleEntry& e : sim.schedule) {
        BandSegment seg;
        seg.start_time = e.start_day * kHoursPerDay;
        seg.end_time = e.end_day * kHoursPerDay;
        seg.tolerance = e.tolerance;
        if (e.band) seg.band = ComfortBand{(*e.band)[0], (*e.band)[1], true, 0};
        segments.push_back(seg);
    }
    return segments;
}

// Full invariant check, with messages naming the offending field.
inline void validate_config(const ScenarioConfig& cfg) {
    if (cfg.occupants.empty()) detail::config_fail("occupants", "at least one occupant required");
    for (std::size_t i = 0; i < cfg.occupants.size(); ++i) {
        const Occupant& o = cfg.occupants[i];
        const std::string path = "occupants[" + std::to_string(i) + "]";
        if (!std::isfinite(o.ideal_temp)) detail::config_fail(path + ".ideal_temp", "must be finite");
        if (!std::isfinite(o.sensitivity) || !(o.sensitivity > 0.0))
            detail::config_fail(path + ".sensitivity", "must be > 0");
        if (!std::isfinite(o.tolerance) || o.tolerance < 0.0)
            detail::config_fail(path + ".tolerance", "must be >= 0");
    }
    if (!std::isfinite(cfg.power_coefficient) || cfg.power_coefficient < 0.0)
        detail::config_fail("power_coefficient", "must be >= 0");
    if (cfg.sweep) {
        const SweepConfig& s = *cfg.sweep;
        if (!std::isfinite(s.delta_min) || !std::isfinite(s.delta_max) ||
            !(0.0 <= s.delta_min && s.delta_min <= s.delta_max))
            detail::config_fail("sweep", "range must satisfy 0 <= delta_min <= delta_max");
        if (!std::isfinite(s.step) || !(s.step > 0.0)) detail::config_fail("sweep.step", "must be > 0");
    }
    if (cfg.simulation) {
        const SimulationConfig& sim = *cfg.simulation;
        try {
            validate(make_profile(sim));
            validate(sim.thermal);
            validate_schedule(make_schedule(sim));
        } catch (const DomainError& e) {
            detail::config_fail("simulation", e.what());
        }
        if (sim.initial_room_temp && !std::isfinite(*sim.initial_room_temp))
            detail::config_fail("simulation.initial_room_temp", "must be finite");
    }
    if (cfg.output.format != "csv" && cfg.output.format != "json")
        detail::config_fail("output.format", "expected \"csv\" or \"json\"");
    if (cfg.output.directory.empty()) detail::config_fail("output.directory", "must be non-empty");
}

// Parses and validates a JSON configuration document. Parse failures keep the
// parser's line/column context; invariant violations name the field.
inline ScenarioConfig parse_config(const std::string& text) {
    detail::json j;
    try {
        j = detail::json::parse(text);
    } catch (const detail::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    detail::expect_object(j, "config",
                          {"occupants", "power_coefficient", "sweep", "simulation", "output"});

    ScenarioConfig cfg;
    if (!j.contains("occupants")) detail::config_fail("occupants", "missing");
    if (!j["occupants"].is_array()) detail::config_fail("occupants", "expected an array");
    for (std::size_t i = 0; i < j["occupants"].size(); ++i)
        cfg.occupants.push_back(detail::parse_occupant(
            j["occupants"][i], "occupants[" + std::to_string(i) + "]", static_cast<int>(i)));

    if (j.contains("power_coefficient"))
        cfg.power_coefficient = detail::as_number(j["power_coefficient"], "power_coefficient");

    if (j.contains("sweep")) {
        detail::expect_object(j["sweep"], "sweep", {"delta_min", "delta_max", "step"});
        SweepConfig s;
        if (j["sweep"].contains("delta_min"))
            s.delta_min = detail::as_number(j["sweep"]["delta_min"], "sweep.delta_min");
        if (j["sweep"].contains("delta_max"))
            s.delta_max = detail::as_number(j["sweep"]["delta_max"], "sweep.delta_max");
        if (j["sweep"].contains("step")) s.step = detail::as_number(j["sweep"]["step"], "sweep.step");
        cfg.sweep = s;
    }

    if (j.contains("simulation"))
        cfg.simulation = detail::parse_simulation(j["simulation"], "simulation");

    if (j.contains("output")) {
        detail::expect_object(j["output"], "output", {"directory", "format"});
        if (j["output"].contains("directory"))
            cfg.output.directory = detail::as_string(j["output"]["directory"], "output.directory");
        if (j["output"].contains("format"))
            cfg.output.format = detail::as_string(j["output"]["format"], "output.format");
    }

    validate_config(cfg);
    return cfg;
}

inline std::string serialize_config(const ScenarioConfig& cfg) {
    detail::json j;
    j["occupants"] = detail::json::array();
    for (const Occupant& o : cfg.occupants)
        j["occupants"].push_back({{"id", o.id},
                                  {"ideal_temp", o.ideal_temp},
                                  {"sensitivity", o.sensitivity},
                                  {"tolerance", o.tolerance}});
    j["power_coefficient"] = cfg.power_coefficient;
    if (cfg.sweep)
        j["sweep"] = {{"delta_min", cfg.sweep->delta_min},
                      {"delta_max", cfg.sweep->delta_max},
                      {"step", cfg.sweep->step}};
    if (cfg.simulation) {
        const SimulationConfig& sim = *cfg.simulation;
        detail::json js;
        js["seed"] = sim.seed;
        js["days"] = sim.days;
        js["daily_min_range"] = sim.daily_min_range;
        js["daily_max_range"] = sim.daily_max_range;
        js["samples_per_day"] = sim.samples_per_day;
        js["thermal"] = {
            {"heat_exchange", sim.thermal.heat_exchange},
            {"control_gain", sim.thermal.control_gain},
            {"dt", sim.thermal.dt},
            {"control_sign",
             sim.thermal.control_sign == ControlSign::Stabilizing ? "stabilizing" : "inverted"},
            {"hysteresis", sim.thermal.hysteresis}};
        if (sim.initial_room_temp) js["initial_room_temp"] = *sim.initial_room_temp;
        if (!sim.schedule.empty()) {
            js["schedule"] = detail::json::array();
            for (const ScheduleEntry& e : sim.schedule) {
                detail::json je{{"start_day", e.start_day}, {"end_day", e.end_day}};
                if (e.tolerance) je["tolerance"] = *e.tolerance;
                if (e.band) je["band"] = *e.band;
                js["schedule"].push_back(je);
            }
        }
        j["simulation"] = js;
    }
    j["output"] = {{"directory", cfg.output.directory}, {"format", cfg.output.format}};
    return j.dump(2) + "\n";
}

}  // namespace comfortctl
