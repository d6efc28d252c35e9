#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "comfortctl/errors.hpp"
#include "comfortctl/occupant.hpp"

namespace comfortctl {

namespace detail {
inline void check_occupants(std::span<const Occupant> occupants) {
    if (occupants.empty()) throw DomainError("occupant list must be non-empty");
}
}  // namespace detail

// Sum of all ternary signals, integer in [-N, N]. Positive means the cold
// votes outnumber the hot ones. Monotone non-increasing in room_temp.
inline int total_signal(std::span<const Occupant> occupants, double room_temp) {
    detail::check_occupants(occupants);
    int sum = 0;
    for (const Occupant& o : occupants) sum += to_int(comfort_signal(o, room_temp));
    return sum;
}

// Count of occupants currently not comfortable, integer in [0, N].
inline int total_abs_signal(std::span<const Occupant> occupants, double room_temp) {
    detail::check_occupants(occupants);
    int sum = 0;
    for (const Occupant& o : occupants) sum += std::abs(to_int(comfort_signal(o, room_temp)));
    return sum;
}

// Exact piecewise-constant representation of an aggregate signal over
// temperature. Because each occupant's acceptable interval is inclusive at
// its ends, the value AT a breakpoint can differ from both neighbouring
// plateaus, so breakpoints carry their own values.
struct StepFunction {
    std::vector<double> breakpoints;  // strictly increasing
    std::vector<int> plateau_values;  // one per open region: breakpoints.size() + 1
    std::vector<int> point_values;    // value exactly at each breakpoint

    int value_at(double t) const {
        const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
        const std::size_t idx = static_cast<std::size_t>(it - breakpoints.begin());
        if (it != breakpoints.end() && *it == t) return point_values[idx];
        return plateau_values[idx];
    }
};

enum class StepKind {
    SignalSum,        // sum of signed signals; monotone non-increasing
    DiscomfortCount,  // number of uncomfortable occupants; not monotone
};

// Builds the exact step representation of the aggregate signal. Breakpoints
// are the distinct interval boundaries ideal_temp +/- tolerance; merging uses
// exact equality of the computed boundary temperatures.
inline StepFunction build_step_function(std::span<const Occupant> occupants,
                                        StepKind kind = StepKind::SignalSum) {
    detail::check_occupants(occupants);
    for (const Occupant& o : occupants) validate(o);

    std::vector<double> bps;
    bps.reserve(occupants.size() * 2);
    for (const Occupant& o : occupants) {
        bps.push_back(o.ideal_temp - o.tolerance);
        bps.push_back(o.ideal_temp + o.tolerance);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    const auto eval = [&](double t) {
        return kind == StepKind::SignalSum ? total_signal(occupants, t)
                                           : total_abs_signal(occupants, t);
    };

    StepFunction f;
    f.breakpoints = std::move(bps);
    const std::size_t n = f.breakpoints.size();
    f.plateau_values.reserve(n + 1);
    f.point_values.reserve(n);
    f.plateau_values.push_back(eval(f.breakpoints.front() - 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        f.point_values.push_back(eval(f.breakpoints[i]));
        const double probe = (i + 1 < n) ? std::midpoint(f.breakpoints[i], f.breakpoints[i + 1])
                                         : f.breakpoints[i] + 1.0;
        f.plateau_values.push_back(eval(probe));
    }
    return f;
}

// Solved target interval: the closure of the level set where the signal sum
// is zero. When the sum never attains zero (steps can skip it when several
// boundaries coincide), the closed hull of the minimal-|sum| region is
// reported instead, with the attained minimum recorded as the residual.
struct ComfortBand {
    double t_min = 0.0;
    double t_max = 0.0;
    bool exact_zero = true;
    int residual = 0;  // min over temperature of |signal sum|; 0 when exact_zero

    friend bool operator==(const ComfortBand&, const ComfortBand&) = default;
};

inline void validate(const ComfortBand& band) {
    if (!std::isfinite(band.t_min) || !std::isfinite(band.t_max) || !(band.t_min <= band.t_max))
        throw DomainError("band: t_min must be <= t_max and finite");
    if (band.residual < 0 || (band.exact_zero && band.residual != 0))
        throw DomainError("band: residual must be >= 0 and zero when exact_zero");
}

inline ComfortBand solve_band(std::span<const Occupant> occupants) {
    const StepFunction sum = build_step_function(occupants, StepKind::SignalSum);
    const std::size_t n = sum.breakpoints.size();

    // Pieces in temperature order: point, plateau, point, plateau, ... The
    // unbounded tails hold +/-N and can never attain the minimum (the lowest
    // breakpoint is some occupant's lower boundary, where that occupant is
    // already comfortable), so only interior pieces are scanned.
    int best = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, std::abs(sum.point_values[i]));
        if (i + 1 < n) best = std::min(best, std::abs(sum.plateau_values[i + 1]));
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(sum.point_values[i]) == best) {
            lo = std::min(lo, sum.breakpoints[i]);
            hi = std::max(hi, sum.breakpoints[i]);
        }
        if (i + 1 < n && std::abs(sum.plateau_values[i + 1]) == best) {
            lo = std::min(lo, sum.breakpoints[i]);
            hi = std::max(hi, sum.breakpoints[i + 1]);
        }
    }
    return ComfortBand{lo, hi, best == 0, best};
}

}  // namespace comfortctl
