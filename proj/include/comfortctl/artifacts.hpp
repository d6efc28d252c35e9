#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "comfortctl/aggregate.hpp"
#include "comfortctl/policy.hpp"
#include "comfortctl/thermal.hpp"

namespace comfortctl {

// All artifact numbers go through here: 6 significant digits, '.' decimal
// separator, byte-stable across runs.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// key=value pairs recorded with every artifact so a file is traceable to the
// exact inputs that produced it.
using AuditTrail = std::vector<std::pair<std::string, std::string>>;

// Column-oriented result table; the single source for both output formats.
struct ArtifactTable {
    AuditTrail audit;
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
};

namespace detail {
inline void write_csv_cell(std::ostream& os, const nlohmann::json& cell) {
    if (cell.is_number_float())
        os << format_number(cell.get<double>());
    else
        os << cell.dump();
}
}  // namespace detail

// Leading '#' comment with the audit trail, then a header row, then data.
inline void write_csv(std::ostream& os, const ArtifactTable& table) {
    os << '#';
    for (const auto& [key, value] : table.audit) os << ' ' << key << '=' << value;
    os << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            detail::write_csv_cell(os, row[c]);
        }
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const ArtifactTable& table) {
    nlohmann::json j;
    j["audit"] = nlohmann::json::object();
    for (const auto& [key, value] : table.audit) j["audit"][key] = value;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    os << j.dump(1) << '\n';
}

namespace detail {
// One row per plateau and one zero-length row per breakpoint (the value AT a
// breakpoint can differ from both neighbouring plateaus). Unbounded tails are
// clipped tail_pad degrees beyond the outermost breakpoints.
inline void append_step_rows(ArtifactTable& table, const StepFunction& f,
                             std::string_view label, double tail_pad) {
    const auto row = [&](double a, double b, int v) {
        std::vector<nlohmann::json> cells;
        if (!label.empty()) cells.emplace_back(label);
        cells.emplace_back(a);
        cells.emplace_back(b);
        cells.emplace_back(v);
        table.rows.push_back(std::move(cells));
    };
    const auto& bp = f.breakpoints;
    row(bp.front() - tail_pad, bp.front(), f.plateau_values.front());
    for (std::size_t i = 0; i < bp.size(); ++i) {
        row(bp[i], bp[i], f.point_values[i]);
        const double end = i + 1 < bp.size() ? bp[i + 1] : bp[i] + tail_pad;
        row(bp[i], end, f.plateau_values[i + 1]);
    }
}
}  // namespace detail

inline ArtifactTable make_step_function_table(const StepFunction& f, AuditTrail audit,
                                              double tail_pad = 2.0) {
    ArtifactTable table;
    table.audit = std::move(audit);
    table.columns = {"segment_start", "segment_end", "value"};
    detail::append_step_rows(table, f, {}, tail_pad);
    return table;
}

// The signed sum and the discomfort count side by side, tagged by a
// `function` column (values "h" and "g").
inline ArtifactTable make_signal_pair_table(const StepFunction& signal_sum,
                                            const StepFunction& discomfort_count,
                                            AuditTrail audit, double tail_pad = 2.0) {
    ArtifactTable table;
    table.audit = std::move(audit);
    table.columns = {"function", "segment_start", "segment_end", "value"};
    detail::append_step_rows(table, signal_sum, "h", tail_pad);
    detail::append_step_rows(table, discomfort_count, "g", tail_pad);
    return table;
}

inline ArtifactTable make_sweep_table(std::span<const SweepResult> rows, AuditTrail audit) {
    ArtifactTable table;
    table.audit = std::move(audit);
    table.columns = {"delta", "t_min", "t_max", "exact_zero", "residual"};
    const std::size_t users = rows.empty() ? 0 : rows.front().per_user_utility.size();
    for (std::size_t i = 0; i < users; ++i) table.columns.push_back("u_" + std::to_string(i + 1));
    table.columns.push_back("worst_case");
    for (const SweepResult& r : rows) {
        std::vector<nlohmann::json> cells{r.tolerance, r.band.t_min, r.band.t_max,
                                          r.band.exact_zero ? 1 : 0, r.band.residual};
        for (double u : r.per_user_utility) cells.emplace_back(u);
        cells.emplace_back(r.worst_case);
        table.rows.push_back(std::move(cells));
    }
    return table;
}

inline ArtifactTable make_trace_table(const SimulationTrace& trace, AuditTrail audit) {
    ArtifactTable table;
    table.audit = std::move(audit);
    table.columns = {"time", "t_ext", "t_room", "w", "h", "g"};
    for (std::size_t i = 0; i < trace.per_user_abs_discomfort.size(); ++i)
        table.columns.push_back("f_" + std::to_string(i + 1));
    for (std::size_t n = 0; n < trace.times.size(); ++n) {
        std::vector<nlohmann::json> cells{trace.times[n],      trace.outdoor[n],
                                          trace.room[n],       trace.control[n],
                                          trace.signal_sum[n], trace.discomfort_count[n]};
        for (const auto& series : trace.per_user_abs_discomfort) cells.emplace_back(series[n]);
        table.rows.push_back(std::move(cells));
    }
    return table;
}

}  // namespace comfortctl
