#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "comfortctl/aggregate.hpp"
#include "comfortctl/errors.hpp"
#include "comfortctl/occupant.hpp"

namespace comfortctl {

// Power drawn to hold the room at room_temp against the outdoor temperature;
// linear in the gap with coefficient mu.
inline double power(double outdoor_temp, double room_temp, double mu = 1.0) {
    if (!std::isfinite(mu) || !(mu >= 0.0)) throw DomainError("mu must be >= 0");
    detail::check_finite_temp(outdoor_temp, "outdoor_temp");
    detail::check_finite_temp(room_temp, "room_temp");
    return mu * std::fabs(outdoor_temp - room_temp);
}

// Energy-optimal setpoint: the projection of the outdoor temperature onto the
// band. Inside the band the cheapest admissible room temperature is the
// outdoor temperature itself; outside, the nearest band edge.
inline double setpoint(double outdoor_temp, const ComfortBand& band) {
    validate(band);
    detail::check_finite_temp(outdoor_temp, "outdoor_temp");
    return std::clamp(outdoor_temp, band.t_min, band.t_max);
}

// Discomfort the occupant sees once the setpoint policy is applied.
inline double expected_abs_discomfort(const Occupant& o, double outdoor_temp,
                                      const ComfortBand& band) {
    return abs_discomfort(o, setpoint(outdoor_temp, band));
}

// Worst discomfort the occupant can see over all outdoor temperatures under
// the setpoint policy. abs_discomfort is V-shaped around the ideal, so the
// maximum over the band sits at one of the two endpoints.
inline double utility(const Occupant& o, const ComfortBand& band) {
    validate(band);
    return std::max(abs_discomfort(o, band.t_min), abs_discomfort(o, band.t_max));
}

inline double worst_case_discomfort(std::span<const Occupant> occupants,
                                    const ComfortBand& band) {
    detail::check_occupants(occupants);
    double worst = 0.0;
    for (const Occupant& o : occupants) worst = std::max(worst, utility(o, band));
    return worst;
}

// One row of a tolerance sweep: the band solved for a tolerance assignment
// plus the per-occupant worst-case discomfort it induces.
struct SweepResult {
    double tolerance = 0.0;  // common tolerance label for this row
    ComfortBand band;
    std::vector<double> per_user_utility;
    double worst_case = 0.0;
};

// Inclusive grid delta_min + n*step; the final point is clamped onto
// delta_max so accumulated rounding never drops or duplicates the endpoint.
inline std::vector<double> sweep_grid(double delta_min, double delta_max, double step) {
    if (!std::isfinite(step) || !(step > 0.0)) throw DomainError("sweep step must be > 0");
    if (!std::isfinite(delta_min) || !std::isfinite(delta_max) ||
        !(0.0 <= delta_min && delta_min <= delta_max))
        throw DomainError("sweep range must satisfy 0 <= delta_min <= delta_max");
    std::vector<double> grid;
    const double guard = step * 1e-9;
    for (std::size_t n = 0;; ++n) {
        const double v = delta_min + static_cast<double>(n) * step;
        if (v >= delta_max - guard) {
            grid.push_back(delta_max);
            break;
        }
        grid.push_back(v);
    }
    return grid;
}

// One sweep row under an explicit per-occupant tolerance assignment.
inline SweepResult sweep_row(std::span<const Occupant> occupants,
                             std::span<const double> tolerances, double label) {
    detail::check_occupants(occupants);
    if (tolerances.size() != occupants.size())
        throw DomainError("tolerance assignment must have one entry per occupant");
    std::vector<Occupant> adjusted(occupants.begin(), occupants.end());
    for (std::size_t i = 0; i < adjusted.size(); ++i) adjusted[i].tolerance = tolerances[i];

    SweepResult row;
    row.tolerance = label;
    row.band = solve_band(adjusted);
    row.per_user_utility.reserve(adjusted.size());
    for (const Occupant& o : adjusted) row.per_user_utility.push_back(utility(o, row.band));
    row.worst_case = *std::max_element(row.per_user_utility.begin(), row.per_user_utility.end());
    return row;
}

// Sweeps a common tolerance applied to every occupant over the inclusive
// grid. Rows are independent; output order follows the grid.
inline std::vector<SweepResult> tolerance_sweep(std::span<const Occupant> occupants,
                                                double delta_min, double delta_max,
                                                double step) {
    detail::check_occupants(occupants);
    const std::vector<double> grid = sweep_grid(delta_min, delta_max, step);
    std::vector<SweepResult> rows;
    rows.reserve(grid.size());
    std::vector<double> tolerances(occupants.size());
    for (double delta : grid) {
        std::fill(tolerances.begin(), tolerances.end(), delta);
        rows.push_back(sweep_row(occupants, tolerances, delta));
    }
    return rows;
}

}  // namespace comfortctl
