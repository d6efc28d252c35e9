#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "comfortctl/artifacts.hpp"
#include "comfortctl/config.hpp"
#include "comfortctl/errors.hpp"

namespace comfortctl {

namespace detail {

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta;
    std::optional<std::string> format;
};

inline ScenarioConfig load_scenario(const CliOptions& opts) {
    std::ifstream is(opts.config_path, std::ios::binary);
    if (!is) throw ConfigError("cannot read config file: " + opts.config_path);
    std::ostringstream text;
    text << is.rdbuf();
    ScenarioConfig cfg = parse_config(text.str());
    if (opts.delta) {
        if (!std::isfinite(*opts.delta) || *opts.delta < 0.0)
            throw ConfigError("--delta must be >= 0");
        for (Occupant& o : cfg.occupants) o.tolerance = *opts.delta;
    }
    if (opts.seed && cfg.simulation) cfg.simulation->seed = *opts.seed;
    if (opts.format) cfg.output.format = *opts.format;
    return cfg;
}

inline std::string resolve_out_path(const CliOptions& opts, const ScenarioConfig& cfg,
                                    const std::string& stem) {
    if (!opts.out_path.empty()) return opts.out_path;
    return cfg.output.directory + "/" + stem + "." + cfg.output.format;
}

inline int write_artifact(const std::string& path, const ArtifactTable& table,
                          const std::string& format, std::ostream& err) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        err << "error: cannot open " << path << " for writing\n";
        return 1;
    }
    if (format == "json")
        write_json(os, table);
    else
        write_csv(os, table);
    os.flush();
    if (!os) {
        err << "error: failed while writing " << path << '\n';
        return 1;
    }
    return 0;
}

inline void append_occupant_audit(AuditTrail& audit, const ScenarioConfig& cfg) {
    audit.emplace_back("occupants", std::to_string(cfg.occupants.size()));
    std::string ideals, tolerances;
    for (const Occupant& o : cfg.occupants) {
        ideals += (ideals.empty() ? "" : ";") + format_number(o.ideal_temp);
        tolerances += (tolerances.empty() ? "" : ";") + format_number(o.tolerance);
    }
    audit.emplace_back("ideal_temps", ideals);
    audit.emplace_back("tolerances", tolerances);
}

inline int cmd_band(const ScenarioConfig& cfg, const CliOptions& opts, std::ostream& out,
                    std::ostream& err) {
    const ComfortBand band = solve_band(cfg.occupants);
    out << format_number(band.t_min) << ' ' << format_number(band.t_max) << '\n';
    if (opts.out_path.empty()) return 0;

    AuditTrail audit{{"command", "band"}};
    append_occupant_audit(audit, cfg);
    ArtifactTable table;
    table.audit = std::move(audit);
    table.columns = {"t_min", "t_max", "exact_zero", "residual"};
    table.rows.push_back({band.t_min, band.t_max, band.exact_zero ? 1 : 0, band.residual});
    return write_artifact(opts.out_path, table, cfg.output.format, err);
}

inline int cmd_curves(const ScenarioConfig& cfg, const CliOptions& opts, std::ostream& err) {
    double lo = cfg.occupants.front().ideal_temp;
    double hi = lo;
    for (const Occupant& o : cfg.occupants) {
        lo = std::min(lo, o.ideal_temp);
        hi = std::max(hi, o.ideal_temp);
    }
    lo -= 8.0;
    hi += 8.0;
    const double step = 0.01;

    AuditTrail audit{{"command", "curves"},
                     {"t_lo", format_number(lo)},
                     {"t_hi", format_number(hi)},
                     {"t_step", format_number(step)}};
    append_occupant_audit(audit, cfg);

    ArtifactTable table;
    table.audit = std::move(audit);
    table.columns = {"t_room"};
    for (std::size_t i = 0; i < cfg.occupants.size(); ++i)
        table.columns.push_back("f_signed_" + std::to_string(i + 1));
    for (std::size_t i = 0; i < cfg.occupants.size(); ++i)
        table.columns.push_back("f_abs_" + std::to_string(i + 1));

    const long count = std::lround((hi - lo) / step);
    for (long n = 0; n <= count; ++n) {
        const double t = lo + static_cast<double>(n) * step;
        std::vector<nlohmann::json> cells{t};
        for (const Occupant& o : cfg.occupants) cells.emplace_back(signed_discomfort(o, t));
        for (const Occupant& o : cfg.occupants) cells.emplace_back(abs_discomfort(o, t));
        table.rows.push_back(std::move(cells));
    }
    return write_artifact(resolve_out_path(opts, cfg, "curves"), table, cfg.output.format, err);
}

inline int cmd_signals(const ScenarioConfig& cfg, const CliOptions& opts, std::ostream& err) {
    const StepFunction h = build_step_function(cfg.occupants, StepKind::SignalSum);
    const StepFunction g = build_step_function(cfg.occupants, StepKind::DiscomfortCount);
    AuditTrail audit{{"command", "signals"}};
    append_occupant_audit(audit, cfg);
    const ArtifactTable table = make_signal_pair_table(h, g, std::move(audit));
    return write_artifact(resolve_out_path(opts, cfg, "signals"), table, cfg.output.format, err);
}

inline int cmd_sweep(const ScenarioConfig& cfg, const CliOptions& opts, std::ostream& err) {
    if (!cfg.sweep) throw ConfigError("sweep: section missing from config");
    const std::vector<SweepResult> rows =
        tolerance_sweep(cfg.occupants, cfg.sweep->delta_min, cfg.sweep->delta_max, cfg.sweep->step);
    AuditTrail audit{{"command", "sweep"},
                     {"delta_min", format_number(cfg.sweep->delta_min)},
                     {"delta_max", format_number(cfg.sweep->delta_max)},
                     {"step", format_number(cfg.sweep->step)}};
    append_occupant_audit(audit, cfg);
    const ArtifactTable table = make_sweep_table(rows, std::move(audit));
    return write_artifact(resolve_out_path(opts, cfg, "sweep"), table, cfg.output.format, err);
}

inline int cmd_simulate(const ScenarioConfig& cfg, const CliOptions& opts, std::ostream& err) {
    if (!cfg.simulation) throw ConfigError("simulation: section missing from config");
    const SimulationConfig& sim = *cfg.simulation;
    const std::vector<BandSegment> schedule = make_schedule(sim);
    const SimulationTrace trace = run_simulation(cfg.occupants, make_profile(sim), sim.thermal,
                                                 sim.initial_room_temp, schedule);

    AuditTrail audit{
        {"command", "simulate"},
        {"seed", std::to_string(sim.seed)},
        {"days", std::to_string(sim.days)},
        {"heat_exchange", format_number(sim.thermal.heat_exchange)},
        {"control_gain", format_number(sim.thermal.control_gain)},
        {"dt", format_number(sim.thermal.dt)},
        {"control_sign",
         sim.thermal.control_sign == ControlSign::Stabilizing ? "stabilizing" : "inverted"},
        {"hysteresis", format_number(sim.thermal.hysteresis)},
        {"daily_min_range",
         format_number(sim.daily_min_range[0]) + ";" + format_number(sim.daily_min_range[1])},
        {"daily_max_range",
         format_number(sim.daily_max_range[0]) + ";" + format_number(sim.daily_max_range[1])},
    };
    append_occupant_audit(audit, cfg);
    const ArtifactTable table = make_trace_table(trace, std::move(audit));
    return write_artifact(resolve_out_path(opts, cfg, "simulate"), table, cfg.output.format, err);
}

inline int cmd_setpoint(const ScenarioConfig& cfg, const CliOptions& opts, std::ostream& err) {
    const ComfortBand band = solve_band(cfg.occupants);
    const double lo = band.t_min - 10.0;
    const double hi = band.t_max + 10.0;
    const double step = 0.1;

    AuditTrail audit{{"command", "setpoint"},
                     {"t_min", format_number(band.t_min)},
                     {"t_max", format_number(band.t_max)},
                     {"mu", format_number(cfg.power_coefficient)}};
    append_occupant_audit(audit, cfg);

    ArtifactTable table;
    table.audit = std::move(audit);
    table.columns = {"t_ext", "setpoint", "power"};
    const long count = std::lround((hi - lo) / step);
    for (long n = 0; n <= count; ++n) {
        const double t_ext = lo + static_cast<double>(n) * step;
        const double sp = setpoint(t_ext, band);
        table.rows.push_back({t_ext, sp, power(t_ext, sp, cfg.power_coefficient)});
    }
    return write_artifact(resolve_out_path(opts, cfg, "setpoint"), table, cfg.output.format, err);
}

}  // namespace detail

// Command-line entry point; `args` excludes the program name. Returns the
// process exit status: 0 only if every requested artifact was written.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    CLI::App app{"Occupant-driven thermal comfort control toolkit"};
    app.name("comfortctl");
    app.require_subcommand(1);

    detail::CliOptions opts;
    const auto add_common = [&opts](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "scenario configuration file (JSON)")
            ->required();
        sub->add_option("--out", opts.out_path, "artifact output path");
        sub->add_option("--seed", opts.seed, "override the simulation seed");
        sub->add_option("--delta", opts.delta, "override every occupant's tolerance (°C)");
        sub->add_option("--format", opts.format, "artifact format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* band = app.add_subcommand("band", "solve the comfort band and print its endpoints");
    CLI::App* curves =
        app.add_subcommand("curves", "sample each occupant's discomfort curves over temperature");
    CLI::App* signals =
        app.add_subcommand("signals", "emit the aggregate signal staircases h and g");
    CLI::App* sweep =
        app.add_subcommand("sweep", "sweep a common tolerance and record bands and discomfort");
    CLI::App* simulate =
        app.add_subcommand("simulate", "run the closed-loop HVAC simulation and emit the trace");
    CLI::App* setpoint_cmd =
        app.add_subcommand("setpoint", "tabulate the optimal setpoint against outdoor temperature");
    for (CLI::App* sub : {band, curves, signals, sweep, simulate, setpoint_cmd}) add_common(sub);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("comfortctl");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        const ScenarioConfig cfg = detail::load_scenario(opts);
        if (band->parsed()) return detail::cmd_band(cfg, opts, out, err);
        if (curves->parsed()) return detail::cmd_curves(cfg, opts, err);
        if (signals->parsed()) return detail::cmd_signals(cfg, opts, err);
        if (sweep->parsed()) return detail::cmd_sweep(cfg, opts, err);
        if (simulate->parsed()) return detail::cmd_simulate(cfg, opts, err);
        if (setpoint_cmd->parsed()) return detail::cmd_setpoint(cfg, opts, err);
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace comfortctl
